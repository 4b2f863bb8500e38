#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qmr/channels.hpp"
#include "qmr/qubit.hpp"

using namespace qmr;

namespace {

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

DensityMatrix random_density(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  while (true) {
    const double x = unit(rng), y = unit(rng), z = unit(rng);
    if (x * x + y * y + z * z <= 1.0) {
      return density_from_bloch(BlochVector(x, y, z));
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("qubit");

TEST_CASE("pauli matrices square to identity and obey XY = iZ") {
  CHECK(max_abs_diff(pauli_x() * pauli_x(), identity2()) < 1e-15);
  CHECK(max_abs_diff(pauli_y() * pauli_y(), identity2()) < 1e-15);
  CHECK(max_abs_diff(pauli_z() * pauli_z(), identity2()) < 1e-15);
  CHECK(max_abs_diff(pauli_x() * pauli_y(), Complex(0, 1) * pauli_z()) < 1e-15);
}

TEST_CASE("pure_to_density on basis and superposition states") {
  Matrix2 expected = Matrix2::Zero();
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(pure_to_density(state_h()).entries(), expected) < 1e-15);

  expected.setZero();
  expected(1, 1) = 1.0;
  CHECK(max_abs_diff(pure_to_density(state_v()).entries(), expected) < 1e-15);

  expected.setConstant(0.5);
  CHECK(max_abs_diff(pure_to_density(state_d()).entries(), expected) < 1e-15);

  CHECK(purity(pure_to_density(state_r())) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-normalized pure states are rejected") {
  CHECK_THROWS_AS(PureState(0.8, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(PureState(1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(PureState::normalized(3.0, 4.0));
}

TEST_CASE("bloch_from_density hits the poles and the center") {
  const BlochVector pole = bloch_from_density(pure_to_density(state_h()));
  CHECK(pole.x() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(pole.z() == doctest::Approx(1.0).epsilon(1e-14));

  const BlochVector center = bloch_from_density(density_from_bloch(BlochVector(0, 0, 0)));
  CHECK(center.norm() < 1e-14);
}

TEST_CASE("bloch y of |R> follows from a direct trace evaluation") {
  // Oracle: Tr[rho Y] computed with locally constructed matrices.
  const auto basis = oracle::paulis();
  oracle::Vector2 amps(M_SQRT1_2, oracle::Complex(0.0, -M_SQRT1_2));
  const oracle::Matrix2 rho = amps * amps.adjoint();
  const double y_expected = (rho * basis[2]).trace().real();
  CHECK(y_expected == doctest::Approx(-1.0).epsilon(1e-14));

  const BlochVector v = bloch_from_density(pure_to_density(state_r()));
  CHECK(v.x() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(v.y() == doctest::Approx(y_expected).epsilon(1e-14));
  CHECK(v.z() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("density_from_bloch basics and range check") {
  Matrix2 expected = Matrix2::Zero();
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(density_from_bloch(BlochVector(0, 0, 1)).entries(), expected) < 1e-15);

  expected = 0.5 * identity2();
  CHECK(max_abs_diff(density_from_bloch(BlochVector(0, 0, 0)).entries(), expected) < 1e-15);

  CHECK(max_abs_diff(density_from_bloch(BlochVector(1, 0, 0)).entries(),
                     pure_to_density(state_d()).entries()) < 1e-15);

  CHECK_THROWS_AS(BlochVector(0.8, 0.8, 0.8), std::invalid_argument);
}

TEST_CASE("bloch <-> density round trip on random states") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = random_density(rng);
    const DensityMatrix back = density_from_bloch(bloch_from_density(rho));
    CHECK(max_abs_diff(rho.entries(), back.entries()) < 1e-12);
  }
}

TEST_CASE("purity is 1 exactly for unit Bloch norm") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const PureState psi = haar_random_state(rng);
    const DensityMatrix rho = pure_to_density(psi);
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bloch_from_density(rho).norm() == doctest::Approx(1.0).epsilon(1e-10));

    const DensityMatrix shrunk = density_from_bloch(BlochVector(0.0, 0.0, 0.7));
    CHECK(purity(shrunk) < 1.0 - 1e-3);
  }
}

TEST_CASE("fidelity on pure and mixed pairs") {
  const DensityMatrix v = pure_to_density(state_v());
  const DensityMatrix h = pure_to_density(state_h());
  const DensityMatrix mixed = density_from_bloch(BlochVector(0, 0, 0));
  CHECK(fidelity(v, v) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(h, v) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fidelity(v, mixed) == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    CHECK(fidelity(random_density(rng), mixed) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("purity of |V> after D = 0.5 damping is 0.50") {
  const DensityMatrix damped = amplitude_damping(0.5).apply(pure_to_density(state_v()));
  CHECK(purity(damped) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial trace of a product state returns the system factor") {
  Matrix4 joint = Matrix4::Zero();
  joint(0, 0) = 1.0;  // |H,a><H,a|
  const DensityMatrix reduced = partial_trace_env(TwoQubitDensity(joint));
  CHECK(max_abs_diff(reduced.entries(), pure_to_density(state_h()).entries()) < 1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  Vector4 bell = Vector4::Zero();
  bell(0) = M_SQRT1_2;  // |H,a>
  bell(3) = M_SQRT1_2;  // |V,b>
  const DensityMatrix reduced = partial_trace_env(TwoQubitDensity(bell * bell.adjoint()));
  CHECK(max_abs_diff(reduced.entries(), 0.5 * identity2()) < 1e-14);
}

TEST_CASE("partial trace of the decoherence joint state at D = 0.5 on |V>") {
  // Oracle: build the joint state from the closed-form amplitudes and trace.
  const double theta2 = M_PI / 8;  // sin^2(2 theta2) = 1/2
  const oracle::Vector4 joint =
      oracle::decoherence_joint_state(oracle::Vector2(0.0, 1.0), theta2);
  const Matrix4 rho4 = joint * joint.adjoint();
  const DensityMatrix reduced = partial_trace_env(TwoQubitDensity(rho4));
  CHECK(max_abs_diff(reduced.entries(), 0.5 * identity2()) < 1e-12);
}

TEST_CASE("partial trace preserves positivity and trace") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    Matrix4 g;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        g(r, c) = Complex(gauss(rng), gauss(rng));
      }
    }
    Matrix4 rho4 = g * g.adjoint();
    rho4 /= rho4.trace().real();
    const DensityMatrix reduced = partial_trace_env(TwoQubitDensity(rho4));
    CHECK(reduced.entries().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<Matrix2> solver(reduced.entries(), Eigen::EigenvaluesOnly);
    CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("invalid density matrices are rejected") {
  Matrix2 not_hermitian;
  not_hermitian << 1.0, Complex(0.1, 0.2), Complex(0.3, 0.1), 0.0;
  CHECK_THROWS_AS(DensityMatrix{not_hermitian}, std::invalid_argument);

  Matrix2 wrong_trace = 0.8 * identity2();
  CHECK_THROWS_AS(DensityMatrix{wrong_trace}, std::invalid_argument);

  Matrix2 negative;
  negative << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
}

TEST_CASE("haar_random_state is deterministic per seed and centered") {
  std::mt19937_64 rng_a(99), rng_b(99);
  for (int i = 0; i < 10; ++i) {
    const PureState a = haar_random_state(rng_a);
    const PureState b = haar_random_state(rng_b);
    CHECK(a.alpha() == b.alpha());
    CHECK(a.beta() == b.beta());
  }

  std::mt19937_64 rng(1234);
  double sum_z = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    sum_z += bloch_from_density(pure_to_density(haar_random_state(rng))).z();
  }
  // Var[z] = 1/3 for Haar-uniform states; allow 5 sigma.
  CHECK(std::abs(sum_z / n) < 5.0 * std::sqrt(1.0 / 3.0 / n));
}

TEST_SUITE_END();
