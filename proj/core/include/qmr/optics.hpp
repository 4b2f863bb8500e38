#pragma once

#include "qmr/channels.hpp"
#include "qmr/qubit.hpp"

namespace qmr {

/// 2x2 operator on the (|H>, |V>) polarization basis.
using JonesMatrix = Matrix2;

/// Joint polarization-path amplitudes over {|H,a>, |H,b>, |V,a>, |V,b>}
/// (index = 2*polarization + path). May be sub-normalized after post-selection.
class PolPathState {
 public:
  explicit PolPathState(const Vector4& amplitudes);

  const Vector4& amplitudes() const { return amplitudes_; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }
  TwoQubitDensity to_density() const;

 private:
  Vector4 amplitudes_;
};

/// HWP angles (radians) of the weak, decoherence and reversing interferometers.
struct WaveplateAngles {
  double theta1;
  double theta2;
  double theta3;
};

void validate_angles(const WaveplateAngles& angles);

double deg_to_rad(double degrees);
double rad_to_deg(double radians);

/// Half-wave plate with fast axis at theta: [[cos2t, sin2t], [sin2t, -cos2t]].
JonesMatrix hwp(double theta);

/// Quarter-wave plate with fast axis at theta; qwp(0) = diag(1, i).
JonesMatrix qwp(double theta);

/// State prepared by a HWP then a QWP acting on |H>.
PureState prepare_state(double theta_h, double theta_q);

/// theta = arcsin(sqrt(s))/2, the HWP angle realizing measurement strength s.
double strength_to_angle(double s);

/// s = sin^2(2 theta) for theta in [0, pi/4]; inverse of strength_to_angle.
double angle_to_strength(double theta);

/// Sagnac weak measurement: the |a>-mode branch carries
/// alpha|0> + beta sqrt(1-p)|1> with sqrt(p) = sin(2 theta1); the dark port
/// is discarded and accounted for in 1 - success_probability.
PipelineOutcome sagnac_weak(const PureState& psi, double theta1);

/// Joint polarization-path state after the decoherence interferometer:
/// |V,a> -> cos(2 theta2)|V,a> + sin(2 theta2)|H,b>, |H,a> unchanged.
PolPathState decoherence_prestate(const PureState& psi, double theta2);

/// Decoherence interferometer followed by the beamsplitter trace-out of the
/// path qubit; equals amplitude damping with D = sin^2(2 theta2).
DensityMatrix sagnac_decoherence(const PureState& psi, double theta2);
DensityMatrix sagnac_decoherence(const DensityMatrix& rho, double theta2);

/// Sagnac reversing measurement, the weak measurement with |0> and |1>
/// interchanged; p_r = sin^2(2 theta3).
PipelineOutcome sagnac_reversing(const PureState& psi, double theta3);
PipelineOutcome sagnac_reversing(const DensityMatrix& rho, double theta3);

/// Weak -> decoherence -> reversing, all at the component level.
/// success_probability equals the analytic pipeline transmittance.
PipelineOutcome full_optical_pipeline(const PureState& input, const WaveplateAngles& angles);

/// Same, with the input prepared from waveplate angles.
PipelineOutcome full_optical_pipeline(double theta_h, double theta_q,
                                      const WaveplateAngles& angles);

}  // namespace qmr
