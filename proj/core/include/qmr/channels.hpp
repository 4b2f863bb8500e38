#pragma once

#include <stdexcept>
#include <vector>

#include "qmr/qubit.hpp"

namespace qmr {

/// Post-selection on an outcome branch whose probability is zero.
class DegenerateOutcomeError : public std::runtime_error {
 public:
  explicit DegenerateOutcomeError(const std::string& what) : std::runtime_error(what) {}
};

/// Quantum operation rho -> sum_i K_i rho K_i^dag given by its Kraus operators.
/// Trace-nonincreasing: sum_i K_i^dag K_i <= I.
class QuantumOperation {
 public:
  explicit QuantumOperation(std::vector<Matrix2> kraus);

  const std::vector<Matrix2>& kraus() const { return kraus_; }
  bool trace_preserving() const;

  /// sum_i K_i rho K_i^dag without renormalization.
  Matrix2 apply_raw(const Matrix2& rho) const;

  /// Applies a trace-preserving operation to a state.
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  std::vector<Matrix2> kraus_;
};

/// Strengths of the weak measurement (p), the decoherence (D) and the
/// reversing measurement (p_r), each in [0, 1].
struct ProtocolParams {
  double p;
  double D;
  double p_r;
};

void validate_params(const ProtocolParams& params);

/// Post-selected state together with the probability of keeping it.
struct PipelineOutcome {
  DensityMatrix state;
  double success_probability;
};

/// Amplitude damping with magnitude D: K0 = diag(1, sqrt(1-D)), K1 = sqrt(D)|0><1|.
QuantumOperation amplitude_damping(double D);

/// Reversible branch of the partial-collapse measurement, M = diag(1, sqrt(1-p)).
PipelineOutcome weak_measurement(const PureState& psi, double p);
PipelineOutcome weak_measurement(const DensityMatrix& rho, double p);

/// Weak measurement with |0> and |1> interchanged, M_r = diag(sqrt(1-p_r), 1).
PipelineOutcome reversing_measurement(const PureState& psi, double p_r);
PipelineOutcome reversing_measurement(const DensityMatrix& rho, double p_r);

/// Reversal strength p_r = p + D(1-p) that maximizes the recovered fidelity
/// when D is known in advance.
double optimal_reversal_strength(double p, double D);

/// Weak measurement -> damping -> reversing measurement, post-selected on both
/// kept branches. success_probability is the transmittance
///   T = |alpha|^2 (1-p_r) + |beta|^2 (1-p)(1-D) + |beta|^2 (1-p) D (1-p_r).
PipelineOutcome apply_pipeline(const PureState& psi, const ProtocolParams& params);

/// Closed-form transmittance of the pipeline for a given input state.
double transmittance(const PureState& psi, const ProtocolParams& params);

/// Closed-form final state under the optimal reversal,
///   (P_R |psi><psi| + P_D |0><0|) / (P_R + P_D),
/// P_R = (1-p)(1-D), P_D = |beta|^2 (1-p)^2 D (1-D). Requires p, D in [0, 1).
DensityMatrix final_state_optimal(const PureState& psi, double p, double D);

/// Transmittance averaged over the Bloch sphere,
///   T_ch = (1-p_r)/2 + (1-p)(1 - p_r D)/2.
double channel_transmittance(const ProtocolParams& params);

/// The pipeline as an unnormalized completely positive map (for tomography).
Matrix2 pipeline_map(const Matrix2& rho, const ProtocolParams& params);

}  // namespace qmr
