#include "qmr/optics.hpp"

#include <cmath>

namespace qmr {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_sagnac_angle(double theta, const char* name) {
  if (!(theta >= 0.0 && theta <= M_PI_2)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, pi/2]");
  }
}

Matrix2 rotation(double theta) {
  Matrix2 r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace

PolPathState::PolPathState(const Vector4& amplitudes) : amplitudes_(amplitudes) {
  if (amplitudes_.squaredNorm() > 1.0 + 1e-12) {
    throw std::invalid_argument("PolPathState: norm exceeds 1");
  }
}

TwoQubitDensity PolPathState::to_density() const {
  return TwoQubitDensity(amplitudes_ * amplitudes_.adjoint() / amplitudes_.squaredNorm());
}

void validate_angles(const WaveplateAngles& angles) {
  check_sagnac_angle(angles.theta1, "theta1");
  check_sagnac_angle(angles.theta2, "theta2");
  check_sagnac_angle(angles.theta3, "theta3");
}

double deg_to_rad(double degrees) { return degrees * M_PI / 180.0; }
double rad_to_deg(double radians) { return radians * 180.0 / M_PI; }

JonesMatrix hwp(double theta) {
  JonesMatrix m;
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  m << c, s, s, -c;
  return m;
}

JonesMatrix qwp(double theta) {
  // R(theta) diag(1, i) R(-theta); squares to hwp(theta) exactly.
  JonesMatrix fast_axis = Matrix2::Zero();
  fast_axis(0, 0) = 1.0;
  fast_axis(1, 1) = kI;
  const Matrix2 r = rotation(theta);
  return r * fast_axis * r.transpose();
}

PureState prepare_state(double theta_h, double theta_q) {
  if (!std::isfinite(theta_h) || !std::isfinite(theta_q)) {
    throw std::invalid_argument("prepare_state: angles must be finite");
  }
  const Vector2 amps = qwp(theta_q) * hwp(theta_h) * Vector2(1.0, 0.0);
  return PureState::normalized(amps(0), amps(1));
}

double strength_to_angle(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("strength_to_angle: s must lie in [0, 1]");
  }
  return 0.5 * std::asin(std::sqrt(s));
}

double angle_to_strength(double theta) {
  if (!(theta >= 0.0 && theta <= M_PI_4)) {
    throw std::invalid_argument("angle_to_strength: theta must lie in [0, pi/4]");
  }
  const double s = std::sin(2.0 * theta);
  return s * s;
}

namespace {

struct WeakBranch {
  PureState state;
  double probability;
};

WeakBranch weak_branch(const PureState& psi, double theta1) {
  check_sagnac_angle(theta1, "theta1");
  const double root_p = std::sin(2.0 * theta1);
  const double p = root_p * root_p;
  // Kept |a>-mode branch; the dark port carries beta*sqrt(p)|0> and is dropped.
  const Complex kept_alpha = psi.alpha();
  const Complex kept_beta = psi.beta() * std::sqrt(1.0 - p);
  const double prob = std::norm(kept_alpha) + std::norm(kept_beta);
  if (prob <= 0.0) {
    throw DegenerateOutcomeError("sagnac_weak: all amplitude leaves through the dark port");
  }
  return WeakBranch{PureState::normalized(kept_alpha, kept_beta), prob};
}

}  // namespace

PipelineOutcome sagnac_weak(const PureState& psi, double theta1) {
  const WeakBranch branch = weak_branch(psi, theta1);
  return PipelineOutcome{pure_to_density(branch.state), branch.probability};
}

PolPathState decoherence_prestate(const PureState& psi, double theta2) {
  check_sagnac_angle(theta2, "theta2");
  const double c = std::cos(2.0 * theta2);
  const double s = std::sin(2.0 * theta2);
  Vector4 amps = Vector4::Zero();
  amps(0) = psi.alpha();      // |H,a>
  amps(2) = psi.beta() * c;   // |V,a>
  amps(1) = psi.beta() * s;   // |H,b>
  return PolPathState(amps);
}

DensityMatrix sagnac_decoherence(const PureState& psi, double theta2) {
  return partial_trace_env(decoherence_prestate(psi, theta2).to_density());
}

DensityMatrix sagnac_decoherence(const DensityMatrix& rho, double theta2) {
  check_sagnac_angle(theta2, "theta2");
  const double c = std::cos(2.0 * theta2);
  const double s = std::sin(2.0 * theta2);
  // Isometry V: |H> -> |H,a>, |V> -> c|V,a> + s|H,b>, then path trace-out.
  Eigen::Matrix<Complex, 4, 2> isometry = Eigen::Matrix<Complex, 4, 2>::Zero();
  isometry(0, 0) = 1.0;
  isometry(2, 1) = c;
  isometry(1, 1) = s;
  const Matrix4 joint = isometry * rho.entries() * isometry.adjoint();
  return partial_trace_env(TwoQubitDensity(joint));
}

PipelineOutcome sagnac_reversing(const PureState& psi, double theta3) {
  return sagnac_reversing(pure_to_density(psi), theta3);
}

PipelineOutcome sagnac_reversing(const DensityMatrix& rho, double theta3) {
  check_sagnac_angle(theta3, "theta3");
  const double root_pr = std::sin(2.0 * theta3);
  const double p_r = root_pr * root_pr;
  // Kept branch scales |0> by sqrt(1-p_r); the dark port carries alpha*sqrt(p_r)|1>.
  Matrix2 kept = Matrix2::Zero();
  kept(0, 0) = std::sqrt(1.0 - p_r);
  kept(1, 1) = 1.0;
  Matrix2 out = kept * rho.entries() * kept.adjoint();
  const double prob = out.trace().real();
  if (prob <= 0.0) {
    throw DegenerateOutcomeError("sagnac_reversing: all amplitude leaves through the dark port");
  }
  out /= prob;
  out = 0.5 * (out + out.adjoint().eval());
  return PipelineOutcome{DensityMatrix(out), prob};
}

PipelineOutcome full_optical_pipeline(const PureState& input, const WaveplateAngles& angles) {
  validate_angles(angles);
  const WeakBranch weak = weak_branch(input, angles.theta1);
  const DensityMatrix damped = sagnac_decoherence(weak.state, angles.theta2);
  const PipelineOutcome reversed = sagnac_reversing(damped, angles.theta3);
  return PipelineOutcome{reversed.state, weak.probability * reversed.success_probability};
}

PipelineOutcome full_optical_pipeline(double theta_h, double theta_q,
                                      const WaveplateAngles& angles) {
  return full_optical_pipeline(prepare_state(theta_h, theta_q), angles);
}

}  // namespace qmr
