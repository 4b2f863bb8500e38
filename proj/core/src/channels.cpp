#include "qmr/channels.hpp"

#include <cmath>

namespace qmr {

namespace {

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

// Post-selects on a single measurement operator branch.
PipelineOutcome select_branch(const Matrix2& rho, const Matrix2& m, const char* what) {
  Matrix2 out = m * rho * m.adjoint();
  const double prob = out.trace().real();
  if (prob <= 0.0) {
    throw DegenerateOutcomeError(std::string(what) + ": outcome probability is zero");
  }
  out /= prob;
  out = 0.5 * (out + out.adjoint().eval());
  return PipelineOutcome{DensityMatrix(out), prob};
}

Matrix2 weak_operator(double p) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::sqrt(1.0 - p);
  return m;
}

Matrix2 reversing_operator(double p_r) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = std::sqrt(1.0 - p_r);
  m(1, 1) = 1.0;
  return m;
}

}  // namespace

QuantumOperation::QuantumOperation(std::vector<Matrix2> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw std::invalid_argument("QuantumOperation: needs at least one Kraus operator");
  }
  Matrix2 sum = Matrix2::Zero();
  for (const Matrix2& k : kraus_) {
    sum += k.adjoint() * k;
  }
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(sum, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().maxCoeff() > 1.0 + 1e-12) {
    throw std::invalid_argument("QuantumOperation: sum K^dag K exceeds identity");
  }
}

bool QuantumOperation::trace_preserving() const {
  Matrix2 sum = Matrix2::Zero();
  for (const Matrix2& k : kraus_) {
    sum += k.adjoint() * k;
  }
  return (sum - identity2()).cwiseAbs().maxCoeff() <= 1e-12;
}

Matrix2 QuantumOperation::apply_raw(const Matrix2& rho) const {
  Matrix2 out = Matrix2::Zero();
  for (const Matrix2& k : kraus_) {
    out += k * rho * k.adjoint();
  }
  return out;
}

DensityMatrix QuantumOperation::apply(const DensityMatrix& rho) const {
  Matrix2 out = apply_raw(rho.entries());
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(out);
}

void validate_params(const ProtocolParams& params) {
  check_unit_interval(params.p, "p");
  check_unit_interval(params.D, "D");
  check_unit_interval(params.p_r, "p_r");
}

QuantumOperation amplitude_damping(double D) {
  check_unit_interval(D, "D");
  Matrix2 k0 = Matrix2::Zero();
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - D);
  Matrix2 k1 = Matrix2::Zero();
  k1(0, 1) = std::sqrt(D);
  return QuantumOperation({k0, k1});
}

PipelineOutcome weak_measurement(const PureState& psi, double p) {
  return weak_measurement(pure_to_density(psi), p);
}

PipelineOutcome weak_measurement(const DensityMatrix& rho, double p) {
  check_unit_interval(p, "p");
  return select_branch(rho.entries(), weak_operator(p), "weak_measurement");
}

PipelineOutcome reversing_measurement(const PureState& psi, double p_r) {
  return reversing_measurement(pure_to_density(psi), p_r);
}

PipelineOutcome reversing_measurement(const DensityMatrix& rho, double p_r) {
  check_unit_interval(p_r, "p_r");
  return select_branch(rho.entries(), reversing_operator(p_r), "reversing_measurement");
}

double optimal_reversal_strength(double p, double D) {
  check_unit_interval(p, "p");
  check_unit_interval(D, "D");
  return p + D * (1.0 - p);
}

PipelineOutcome apply_pipeline(const PureState& psi, const ProtocolParams& params) {
  validate_params(params);
  const PipelineOutcome weak = weak_measurement(psi, params.p);
  const DensityMatrix damped = amplitude_damping(params.D).apply(weak.state);
  const PipelineOutcome reversed = reversing_measurement(damped, params.p_r);
  return PipelineOutcome{reversed.state,
                         weak.success_probability * reversed.success_probability};
}

double transmittance(const PureState& psi, const ProtocolParams& params) {
  validate_params(params);
  const double a2 = std::norm(psi.alpha());
  const double b2 = std::norm(psi.beta());
  return a2 * (1.0 - params.p_r) + b2 * (1.0 - params.p) * (1.0 - params.D) +
         b2 * (1.0 - params.p) * params.D * (1.0 - params.p_r);
}

DensityMatrix final_state_optimal(const PureState& psi, double p, double D) {
  check_unit_interval(p, "p");
  check_unit_interval(D, "D");
  if (p >= 1.0 || D >= 1.0) {
    throw DegenerateOutcomeError("final_state_optimal: p = 1 or D = 1 leaves no kept ensemble");
  }
  const double b2 = std::norm(psi.beta());
  const double p_recover = (1.0 - p) * (1.0 - D);
  const double p_decohere = b2 * (1.0 - p) * (1.0 - p) * D * (1.0 - D);
  const Vector2 amps = psi.amplitudes();
  Matrix2 numerator = p_recover * (amps * amps.adjoint());
  numerator(0, 0) += p_decohere;
  return DensityMatrix(numerator / (p_recover + p_decohere));
}

double channel_transmittance(const ProtocolParams& params) {
  validate_params(params);
  return 0.5 * (1.0 - params.p_r) +
         0.5 * (1.0 - params.p) * (1.0 - params.p_r * params.D);
}

Matrix2 pipeline_map(const Matrix2& rho, const ProtocolParams& params) {
  validate_params(params);
  const Matrix2 m = weak_operator(params.p);
  const Matrix2 m_r = reversing_operator(params.p_r);
  const Matrix2 damped = amplitude_damping(params.D).apply_raw(m * rho * m.adjoint());
  return m_r * damped * m_r.adjoint();
}

}  // namespace qmr
