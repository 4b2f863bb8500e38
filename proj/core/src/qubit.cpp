#include "qmr/qubit.hpp"

#include <cmath>

namespace qmr {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_hermitian(const Eigen::MatrixXcd& m, double tol, const char* what) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
  }
}

void check_unit_trace(const Eigen::MatrixXcd& m, double tol, const char* what) {
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) {
    throw std::invalid_argument(std::string(what) + ": trace is not 1");
  }
}

void check_psd(const Eigen::MatrixXcd& m, double floor, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < floor) {
    throw std::invalid_argument(std::string(what) + ": negative eigenvalue");
  }
}

}  // namespace

Matrix2 identity2() { return Matrix2::Identity(); }

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << 0, -kI, kI, 0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

PureState::PureState(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

PureState PureState::normalized(Complex alpha, Complex beta) {
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (norm <= 0.0) {
    throw std::invalid_argument("PureState: zero state cannot be normalized");
  }
  return PureState(alpha / norm, beta / norm);
}

PureState state_h() { return PureState(1.0, 0.0); }
PureState state_v() { return PureState(0.0, 1.0); }
PureState state_d() { return PureState(M_SQRT1_2, M_SQRT1_2); }
PureState state_a() { return PureState(M_SQRT1_2, -M_SQRT1_2); }
PureState state_r() { return PureState(M_SQRT1_2, Complex(0.0, -M_SQRT1_2)); }
PureState state_l() { return PureState(M_SQRT1_2, Complex(0.0, M_SQRT1_2)); }

DensityMatrix::DensityMatrix(const Matrix2& entries) : entries_(entries) {
  check_hermitian(entries, kHermitianTol, "DensityMatrix");
  check_unit_trace(entries, kTraceTol, "DensityMatrix");
  check_psd(entries, kEigenvalueFloor, "DensityMatrix");
}

BlochVector::BlochVector(double x, double y, double z) : x_(x), y_(y), z_(z) {
  if (x * x + y * y + z * z > 1.0 + kBlochNormSlack) {
    throw std::invalid_argument("BlochVector: norm exceeds 1");
  }
}

double BlochVector::norm() const { return std::sqrt(x_ * x_ + y_ * y_ + z_ * z_); }

TwoQubitDensity::TwoQubitDensity(const Matrix4& entries) : entries_(entries) {
  check_hermitian(entries, kTwoQubitTol, "TwoQubitDensity");
  check_unit_trace(entries, kTwoQubitTol, "TwoQubitDensity");
  check_psd(entries, -kTwoQubitTol, "TwoQubitDensity");
}

DensityMatrix pure_to_density(const PureState& psi) {
  const Vector2 amps = psi.amplitudes();
  return DensityMatrix(amps * amps.adjoint());
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  const Matrix2& m = rho.entries();
  return BlochVector((m * pauli_x()).trace().real(),
                     (m * pauli_y()).trace().real(),
                     (m * pauli_z()).trace().real());
}

DensityMatrix density_from_bloch(const BlochVector& v) {
  Matrix2 m = 0.5 * (identity2() + v.x() * pauli_x() + v.y() * pauli_y() + v.z() * pauli_z());
  return DensityMatrix(m);
}

double fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_rec) {
  double f = (rho_in.entries() * rho_rec.entries()).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  double g = (rho.entries() * rho.entries()).trace().real();
  return std::clamp(g, 0.0, 1.0);
}

DensityMatrix partial_trace_env(const TwoQubitDensity& rho) {
  const Matrix4& m = rho.entries();
  Matrix2 out;
  // index = 2*system + environment
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      out(s, t) = m(2 * s + 0, 2 * t + 0) + m(2 * s + 1, 2 * t + 1);
    }
  }
  // Symmetrize away the last bits of rounding before validation.
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(out);
}

PureState haar_random_state(std::mt19937_64& rng) {
  // Box-Muller on explicitly constructed uniforms so the draw sequence is
  // pinned down by the mt19937_64 stream alone.
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto gaussian_pair = [&](double& g0, double& g1) {
    const double u1 = 1.0 - uniform();  // in (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    g0 = r * std::cos(2.0 * M_PI * u2);
    g1 = r * std::sin(2.0 * M_PI * u2);
  };
  double a_re, a_im, b_re, b_im;
  gaussian_pair(a_re, a_im);
  gaussian_pair(b_re, b_im);
  return PureState::normalized(Complex(a_re, a_im), Complex(b_re, b_im));
}

}  // namespace qmr
