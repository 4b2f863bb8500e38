#pragma once

#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace qmr {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector2 = Eigen::Vector2cd;
using Vector4 = Eigen::Vector4cd;

// Validity tolerances. Sized to absorb accumulated floating-point error
// over a few chained operations.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kTwoQubitTol = 1e-10;
inline constexpr double kBlochNormSlack = 1e-10;

// Pauli conventions, fixed once for the whole library:
//   X = [[0,1],[1,0]], Y = [[0,-i],[i,0]], Z = [[1,0],[0,-1]],
// with the computational basis |0> = |H>, |1> = |V>.
Matrix2 identity2();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

/// Single-qubit pure state alpha|0> + beta|1>. Must be normalized.
class PureState {
 public:
  PureState(Complex alpha, Complex beta);

  /// Builds a state from arbitrary non-zero amplitudes, rescaling to unit norm.
  static PureState normalized(Complex alpha, Complex beta);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Vector2 amplitudes() const { return Vector2(alpha_, beta_); }

 private:
  Complex alpha_;
  Complex beta_;
};

// Named polarization states. D/A are the +/-45 deg linear states,
// R = (|H> - i|V>)/sqrt(2) and L = (|H> + i|V>)/sqrt(2).
PureState state_h();
PureState state_v();
PureState state_d();
PureState state_a();
PureState state_r();
PureState state_l();

/// 2x2 Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix2& entries);

  const Matrix2& entries() const { return entries_; }

 private:
  Matrix2 entries_;
};

/// Point in (or on) the Bloch ball: x = Tr[rho X], y = Tr[rho Y], z = Tr[rho Z].
class BlochVector {
 public:
  BlochVector(double x, double y, double z);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  double norm() const;

 private:
  double x_, y_, z_;
};

/// 4x4 density operator over system (x) environment, index = 2*system + environment.
class TwoQubitDensity {
 public:
  explicit TwoQubitDensity(const Matrix4& entries);

  const Matrix4& entries() const { return entries_; }

 private:
  Matrix4 entries_;
};

DensityMatrix pure_to_density(const PureState& psi);
BlochVector bloch_from_density(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& v);

/// Overlap fidelity Tr[rho_in rho_rec]; symmetric, 1 iff both are the same pure state.
double fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_rec);

/// Purity Tr[rho^2]; 1 for pure states, 1/2 for the maximally mixed qubit.
double purity(const DensityMatrix& rho);

/// Traces out the environment qubit (the low index bit).
DensityMatrix partial_trace_env(const TwoQubitDensity& rho);

/// Haar-uniform pure state sampled as a normalized pair of complex Gaussians.
PureState haar_random_state(std::mt19937_64& rng);

}  // namespace qmr
