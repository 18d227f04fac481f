#include "test_main.hpp"

#include <complex>
#include <random>

#include "cohav/errors.hpp"
#include "cohav/oracle/full_hilbert.hpp"
#include "cohav/symstate.hpp"
#include "helpers.hpp"

using namespace cohav;
using cohav::testing::pi;

TEST_CASE("product state: favorable state puts all weight on m = N/2") {
  const auto psi = build_product_state(2, {0.0, 0.0, pi / 4, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(psi.amplitude(1.0, 0) - r) < 1e-15);
  CHECK(std::abs(psi.amplitude(1.0, 1) - r) < 1e-15);
  for (double m : {0.0, -1.0})
    for (int s : {0, 1}) CHECK(std::abs(psi.amplitude(m, s)) == 0.0);
}

TEST_CASE("product state: N=1 computational basis state") {
  const auto psi = build_product_state(1, {});
  CHECK(psi.amplitude(0.5, 0) == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(psi.amplitude(0.5, 1)) == 0.0);
  CHECK(std::abs(psi.amplitude(-0.5, 0)) == 0.0);
  CHECK(std::abs(psi.amplitude(-0.5, 1)) == 0.0);
}

TEST_CASE("product state agrees with the full tensor product projected on the symmetric sector") {
  const StateAngles a{pi / 3, 3 * pi / 8, pi / 6, 5 * pi / 8};
  const auto psi = build_product_state(3, a);
  const Eigen::VectorXcd full = oracle::product_state(3, a);
  const Eigen::VectorXcd proj = oracle::project_symmetric(3, full);
  CHECK((psi.amplitudes() - proj).cwiseAbs().maxCoeff() < 1e-12);
  // The full state lies entirely in the symmetric sector.
  CHECK(std::abs(proj.norm() - 1.0) < 1e-12);

  std::mt19937_64 rng(11);
  for (int n = 1; n <= 10; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto ang = testing::random_angles(rng);
      const auto sym = build_product_state(n, ang);
      const auto ref = oracle::project_symmetric(n, oracle::product_state(n, ang));
      CHECK((sym.amplitudes() - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("product state stays normalized up to N = 2000") {
  std::mt19937_64 rng(5);
  for (int n : {1, 10, 100, 500, 1000, 2000}) {
    const auto psi = build_product_state(n, testing::random_angles(rng));
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    CHECK(psi.dim() == 2 * (n + 1));
  }
  // cos(alpha) = 0 edge: every probe in |1>.
  const auto down = build_product_state(50, {pi / 2, 0.3, 0.0, 0.0});
  CHECK(std::abs(std::abs(down.amplitude(-25.0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("product state rejects bad input") {
  CHECK_THROWS_AS(build_product_state(0, {}), InvalidArgument);
  CHECK_THROWS_AS(build_product_state(3, {std::nan(""), 0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(build_product_state(3, {0, std::numeric_limits<double>::infinity(), 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(SymmetricState(2, Eigen::VectorXcd::Zero(5)), InvalidArgument);
  CHECK_THROWS_AS(SymmetricState(2, Eigen::VectorXcd::Zero(6)), InvalidArgument);
}

TEST_CASE("collective J_z") {
  CHECK(collective_jz(2).diagonal().isApprox(Eigen::Vector3d(1, 0, -1)));
  CHECK(collective_jz(1).diagonal().isApprox(Eigen::Vector2d(0.5, -0.5)));
  Eigen::VectorXd four(5);
  four << 2, 1, 0, -1, -2;
  CHECK(collective_jz(4).diagonal().isApprox(four));
  CHECK_THROWS_AS(collective_jz(0), InvalidArgument);
}

TEST_CASE("collective J_x") {
  const auto jx1 = collective_jx(1);
  CHECK(jx1(0, 1) == doctest::Approx(0.5));
  CHECK(jx1(0, 0) == 0.0);

  // Brute force (X (x) 1 + 1 (x) X)/2 on two qubits, restricted to the triplet.
  Eigen::Matrix4d full = Eigen::Matrix4d::Zero();
  for (int b = 0; b < 4; ++b) {
    full(b ^ 1, b) += 0.5;
    full(b ^ 2, b) += 0.5;
  }
  Eigen::Matrix<double, 4, 3> triplet = Eigen::Matrix<double, 4, 3>::Zero();
  triplet(0, 0) = 1.0;                                          // |00>, m = 1
  triplet(1, 1) = triplet(2, 1) = 1.0 / std::sqrt(2.0);         // m = 0
  triplet(3, 2) = 1.0;                                          // |11>, m = -1
  const Eigen::Matrix3d restricted = triplet.transpose() * full * triplet;
  CHECK((restricted - collective_jx(2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(collective_jx(2)(1, 0) == doctest::Approx(0.70710678118654752));

  for (int n : {1, 2, 7, 64}) {
    const auto jx = collective_jx(n);
    CHECK(jx.isApprox(jx.transpose()));
    CHECK(std::abs(jx.trace()) == 0.0);
  }
}

TEST_CASE("angular momentum algebra holds up to N = 64") {
  const std::complex<double> i(0.0, 1.0);
  for (int n = 1; n <= 64; ++n) {
    const Eigen::MatrixXcd jz = collective_jz(n).cast<std::complex<double>>();
    const Eigen::MatrixXcd jx = collective_jx(n).cast<std::complex<double>>();
    const Eigen::MatrixXcd jy = collective_jy(n);
    CHECK((jx * jy - jy * jx - i * jz).cwiseAbs().maxCoeff() < 1e-14 * n * n);
    CHECK((jz * jx - jx * jz - i * jy).cwiseAbs().maxCoeff() < 1e-14 * n * n);
    const double j = 0.5 * n;
    const Eigen::MatrixXcd casimir = jx * jx + jy * jy + jz * jz;
    CHECK((casimir - j * (j + 1) * Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("thermal equivalent angle") {
  CHECK(thermal_equivalent_alpha({0.0, 1.0}) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(thermal_equivalent_alpha({50.0, 1.0}) == doctest::Approx(pi / 2).epsilon(1e-12));
  // 40-digit reference: arccos(sqrt(e^-1 / (e^-1 + e))).
  CHECK(std::abs(thermal_equivalent_alpha({1.0, 1.0}) - 1.2182829050172776) < 1e-14);
  CHECK_THROWS_AS(thermal_equivalent_alpha({std::nan(""), 1.0}), InvalidArgument);
  CHECK_THROWS_AS(thermal_equivalent_alpha({-1.0, 1.0}), InvalidArgument);
  for (double b : {0.0, 0.1, 1.0, 3.0, 100.0}) {
    const double a = thermal_equivalent_alpha({b, 0.7});
    CHECK(a >= 0.0);
    CHECK(a <= pi / 2);
  }
}

TEST_CASE("text serialization round-trips bit-exactly") {
  const auto psi = build_product_state(5, testing::figure_angles());
  const std::string text = to_text(psi);
  CHECK(text.rfind("N=5\n", 0) == 0);
  const auto back = state_from_text(text);
  CHECK(back.n_probes() == 5);
  CHECK((back.amplitudes().array() == psi.amplitudes().array()).all());
  CHECK_THROWS_AS(state_from_text("M=3\n"), InvalidArgument);
  CHECK_THROWS_AS(state_from_text("N=1\n0.5 0 1 0\n"), InvalidArgument);
}
