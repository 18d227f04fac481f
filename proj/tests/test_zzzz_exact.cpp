#include "test_main.hpp"

#include <array>
#include <cmath>
#include <random>

#include "cohav/fisher.hpp"
#include "cohav/oracle/full_hilbert.hpp"
#include "cohav/scaling_fit.hpp"
#include "cohav/zzzz_exact.hpp"
#include "helpers.hpp"

using namespace cohav;
using cohav::testing::pi;
using cohav::testing::rel_err;

namespace {

const ModelSpec kUnit = testing::unit_spec(ModelKind::zzzz);

ModelSpec random_zzzz(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.5);
  return {ModelKind::zzzz, u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("global closed forms at the special states") {
  CHECK(global_qfi_closed(kUnit, 7, testing::favorable_angles(), Param::x) == doctest::Approx(49.0).epsilon(1e-15));
  CHECK(global_qfi_closed(kUnit, 7, testing::worst_angles(), Param::x) == doctest::Approx(7.0).epsilon(1e-15));
  const auto ang = testing::figure_angles();
  const double w0 = global_qfi_closed(kUnit, 1, ang, Param::omega0);
  CHECK(w0 == doctest::Approx(std::pow(std::sin(2 * ang.beta), 2)));
  CHECK(global_qfi_closed(kUnit, 500, ang, Param::omega0) == w0);
  CHECK_THROWS_AS(global_qfi_closed(testing::unit_spec(ModelKind::zzxx), 3, ang, Param::x), UnsupportedModel);
}

TEST_CASE("global closed forms match the numerical pipeline") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelSpec spec = random_zzzz(rng);
    const auto ang = testing::random_angles(rng);
    for (int n : {1, 2, 4, 8, 16, 32, 64}) {
      for (auto p : {Param::x, Param::omega0, Param::omega1}) {
        const double ref = global_qfi_closed(spec, n, ang, p);
        const double got = global_qfi_fd(spec, n, ang, p).value;
        const double floor = 1e-9 * global_qfi_closed(spec, n, {0.0, 0.0, pi / 4, 0.0}, Param::x) + 1e-12;
        CHECK(std::abs(got - ref) <= 1e-6 * std::abs(ref) + floor);
      }
    }
  }
}

TEST_CASE("global QFIs grow as t^2") {
  const auto ang = testing::figure_angles();
  for (auto p : {Param::x, Param::omega0, Param::omega1}) {
    ModelSpec s = kUnit;
    const double i1 = global_qfi_fd(s, 12, ang, p).value;
    s.t = 3.0;
    CHECK(rel_err(global_qfi_fd(s, 12, ang, p).value, 9.0 * i1) < 1e-6);
  }
}

TEST_CASE("reduced density matrix") {
  ModelSpec s = kUnit;
  s.t = 0.0;
  const auto ang = testing::figure_angles();
  const Ket2 xi = qubit_ket(ang.beta, ang.varphi);
  CHECK((reduced_rho_closed(s, 5, ang).matrix() - xi * xi.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  s = kUnit;
  s.x = pi / 2;
  CHECK(std::abs(reduced_rho_closed(s, 6, testing::worst_angles()).matrix()(0, 1)) < 1e-15);

  std::mt19937_64 rng(32);
  for (int n = 1; n <= 8; ++n) {
    const ModelSpec spec = random_zzzz(rng);
    const auto a = testing::random_angles(rng);
    const Op2 num = reduce_to_bus(propagate_product_state(spec, n, a)).matrix();
    CHECK((reduced_rho_closed(spec, n, a).matrix() - num).cwiseAbs().maxCoeff() < 1e-10);
    // No omega1 dependence.
    CHECK((reduced_rho_closed(with_parameter(spec, Param::omega1, 7.0), n, a).matrix() -
           reduced_rho_closed(spec, n, a).matrix())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("local omega1 QFI vanishes for pure product states") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 10; ++i) {
    const auto r = local_qfi_fd(random_zzzz(rng), 1 + i, testing::random_angles(rng), Param::omega1);
    CHECK(r.value < 1e-12);
  }
}

TEST_CASE("local QFI closed form matches the pipeline") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelSpec spec = random_zzzz(rng);
    const auto ang = testing::random_angles(rng);
    for (int n : {1, 2, 4, 8, 16, 32, 64}) {
      const double ref = local_qfi_x_closed(spec, n, ang).value;
      const double got = local_qfi_fd(spec, n, ang, Param::x).value;
      CHECK(std::abs(got - ref) <= 1e-6 * ref + 1e-12);
    }
  }
}

TEST_CASE("local QFI at the special states") {
  for (int n : {1, 5, 100}) {
    CHECK(local_qfi_x_closed(kUnit, n, testing::favorable_angles()).value == doctest::Approx(double(n) * n).epsilon(1e-10));
  }
  // 16 tan^2(1) / (cos(1)^-8 - 1), evaluated with mpmath.
  CHECK(local_qfi_x_closed(kUnit, 4, testing::worst_angles()).value ==
        doctest::Approx(0.283912709097551446538494497545).epsilon(1e-13));
  for (int n = 1; n <= 50; ++n) {
    const double th = 1.0;
    const double printed = n * n * std::pow(std::tan(th), 2) / (std::pow(std::cos(th), -2.0 * n) - 1.0);
    CHECK(rel_err(local_qfi_x_closed(kUnit, n, testing::worst_angles()).value, printed) < 1e-12);
  }
  ModelSpec s = kUnit;
  s.x = pi / 2;
  CHECK(local_qfi_x_closed(s, 6, testing::worst_angles()).value < 1e-25);
}

TEST_CASE("local QFI far below double range signals underflow") {
  const auto r = local_qfi_x_closed(kUnit, 1000000, testing::worst_angles());
  CHECK(r.signal == Signal::underflow);
  CHECK(r.value == 0.0);
  CHECK(r.log10_value < -1e5);
  CHECK(std::isfinite(r.log10_value));
}

TEST_CASE("alpha-N grid: local QFI decays beyond its maximum") {
  ModelSpec s = kUnit;
  for (int i = 0; i <= 40; ++i) {
    const double alpha = pi / 4 * i / 40.0;
    const StateAngles ang{alpha, 0.0, pi / 4, 0.0};
    double prev = -1e300, peak = -1e300;
    bool past_peak = false;
    for (int n = 1; n <= 2000; ++n) {
      const double v = local_qfi_x_closed(s, n, ang).log10_value;
      if (i == 0) CHECK(rel_err(std::pow(10.0, v), double(n) * n) < 1e-12);
      if (v < prev - 1e-12) past_peak = true;
      if (past_peak && i > 0) CHECK(v <= prev + 1e-9 * std::abs(prev));
      peak = std::max(peak, v);
      prev = v;
    }
    if (i > 0) CHECK(past_peak);
  }
}

TEST_CASE("X measurement: exact statebad formula") {
  const auto bad = testing::worst_angles();
  // N^2 tan^2(1) / (cos(1)^-8 cos(1)^-2 - 1) at N = 4, mpmath.
  CHECK(delta_x_X0(kUnit, 4, bad, X0Variant::exact_statebad).inverse_squared ==
        doctest::Approx(0.0824545435508839093804947753951).epsilon(1e-13));
  // cos(delta omega0 t) = 1 reduces to the local QFI.
  ModelSpec s = kUnit;
  s.omega0 = 0.0;
  for (int n : {1, 3, 10, 40})
    CHECK(rel_err(delta_x_X0(s, n, bad, X0Variant::exact_statebad).inverse_squared,
                  local_qfi_x_closed(s, n, bad).value) < 1e-12);
  // eps t x = 0.1 keeps the bus coherence cos(0.1)^N resolvable up to N = 64.
  s = kUnit;
  s.epsilon = 0.1;
  for (int n = 1; n <= 64; ++n) {
    const auto fm = first_moment_uncertainty(s, n, bad, Param::x, pauli_x());
    CHECK(rel_err(delta_x_X0(s, n, bad, X0Variant::exact_statebad).uncertainty, fm.uncertainty) < 1e-8);
  }
  for (int n = 1; n <= 12; ++n) {
    const auto fm = first_moment_uncertainty(kUnit, n, bad, Param::x, pauli_x());
    CHECK(rel_err(delta_x_X0(kUnit, n, bad, X0Variant::exact_statebad).uncertainty, fm.uncertainty) < 1e-6);
  }
  s = kUnit;
  s.x = pi / 2;
  CHECK(delta_x_X0(s, 5, bad, X0Variant::exact_statebad).inverse_squared < 1e-100);
  CHECK_THROWS_AS(delta_x_X0(kUnit, 4, testing::figure_angles(), X0Variant::exact_statebad), InvalidArgument);
  CHECK_THROWS_AS(delta_x_X0(kUnit, 4, testing::figure_angles(), X0Variant::pert_statebad), InvalidArgument);
}

TEST_CASE("X measurement: perturbative statebad formula") {
  const auto bad = testing::worst_angles();
  // 16 / (4 + tan^2(1)), mpmath.
  CHECK(delta_x_X0(kUnit, 4, bad, X0Variant::pert_statebad).inverse_squared ==
        doctest::Approx(2.49007129948320501585665390231).epsilon(1e-13));
  std::vector<double> ns, vs;
  for (int i = 0; i <= 10; ++i) {
    const double n = std::round(std::pow(10.0, 3.0 + i / 10.0));
    ns.push_back(n);
    vs.push_back(delta_x_X0(kUnit, int(n), bad, X0Variant::pert_statebad).inverse_squared);
  }
  CHECK(std::abs(fit_power_law(ns, vs).exponent - 1.0) < 0.05);
}

TEST_CASE("X measurement: general binomial formula") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelSpec spec = random_zzzz(rng);
    const auto ang = testing::random_angles(rng);
    const int n = 1 + trial * 3;
    const auto fm = first_moment_uncertainty(spec, n, ang, Param::x, pauli_x());
    const auto g = delta_x_X0(spec, n, ang, X0Variant::pert_general);
    CHECK(rel_err(g.uncertainty, fm.uncertainty) < 1e-6);
  }
  for (int n : {1, 2, 9, 30})
    CHECK(rel_err(delta_x_X0(kUnit, n, testing::worst_angles(), X0Variant::pert_general).inverse_squared,
                  delta_x_X0(kUnit, n, testing::worst_angles(), X0Variant::exact_statebad).inverse_squared) < 1e-8);
  // The favorable state saturates the QFI.
  CHECK(delta_x_X0(kUnit, 9, testing::favorable_angles(), X0Variant::pert_general).inverse_squared ==
        doctest::Approx(81.0).epsilon(1e-10));
}

TEST_CASE("thermal global QFIs") {
  // 10 (1 - tanh^2(1)), mpmath.
  CHECK(thermal_global_qfi(kUnit, 10, 1.0, 0.3, Param::omega1) ==
        doctest::Approx(4.19974341614026069394496739042).epsilon(1e-14));
  // sin^2(1.4) (25 tanh^2(0.3) + 5 (1 - tanh^2(0.3))), mpmath.
  CHECK(thermal_global_qfi(kUnit, 5, 0.3, 0.7, Param::x) == doctest::Approx(6.50378473804502423821513397239).epsilon(1e-14));
  CHECK(thermal_global_qfi(kUnit, 6, 0.0, 0.7, Param::x) == doctest::Approx(6.0 * std::pow(std::sin(1.4), 2)));
  CHECK(thermal_global_qfi(kUnit, 6, 50.0, 0.7, Param::x) == doctest::Approx(36.0 * std::pow(std::sin(1.4), 2)));
  CHECK(thermal_global_qfi(kUnit, 6, 0.4, 0.7, Param::omega0) == doctest::Approx(std::pow(std::sin(1.4), 2)));
  CHECK_THROWS_AS(thermal_global_qfi(kUnit, 6, -1.0, 0.7, Param::x), InvalidArgument);
}

TEST_CASE("thermal global QFIs match the mixed-state oracle") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(0.1, 1.2);
  for (int n = 1; n <= 5; ++n) {
    const ModelSpec spec{ModelKind::zzzz, u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const double bth = u(rng), bb = u(rng), vp = u(rng);
    for (auto p : {Param::x, Param::omega0, Param::omega1}) {
      const auto rho = [&](double v) { return oracle::thermal_density(with_parameter(spec, p, v), n, bth, bb, vp); };
      const double ref = oracle::mixed_qfi_fd(rho, parameter_value(spec, p), 1e-5);
      CHECK(rel_err(thermal_global_qfi(spec, n, bth, bb, p), ref) < 1e-6);
    }
  }
}

TEST_CASE("thermal probes and their pure partner give the same bus state") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    ModelSpec spec = random_zzzz(rng);
    spec.omega1 = u(rng);
    const double bth = u(rng);
    const auto rep = thermal_local_equivalence_check(spec, 1 + 7 * i, bth, 0.6, 0.2);
    CHECK(rep.pass);
    CHECK(rep.max_deviation < 1e-10);
  }
  const auto zero = thermal_local_equivalence_check(kUnit, 9, 0.0, pi / 4, 0.0);
  CHECK(zero.max_deviation < 1e-15);
  CHECK(thermal_equivalent_alpha({0.0, 1.0}) == doctest::Approx(pi / 4));

  for (int n = 1; n <= 6; ++n) {
    const ModelSpec spec = random_zzzz(rng);
    const Op2 ref = oracle::thermal_bus_density(spec, n, 0.8, 0.6, 0.2);
    CHECK((thermal_reduced_rho(spec, n, 0.8, 0.6, 0.2).matrix() - ref).cwiseAbs().maxCoeff() < 1e-10);
  }
  // Same local QFI for x.
  const double bth = 0.35;
  const StateAngles partner{thermal_equivalent_alpha({bth, 1.0}), 0.0, 0.6, 0.2};
  const auto rho = [&](double x) { return Eigen::MatrixXcd(thermal_reduced_rho(with_parameter(kUnit, Param::x, x), 7, bth, 0.6, 0.2).matrix()); };
  CHECK(rel_err(oracle::mixed_qfi_fd(rho, 1.0, 1e-5), local_qfi_x_closed(kUnit, 7, partner).value) < 1e-6);
}

TEST_CASE("non-ZZZZ models are rejected") {
  const ModelSpec s = testing::unit_spec(ModelKind::zzzx);
  CHECK_THROWS_AS(reduced_rho_closed(s, 3, testing::figure_angles()), UnsupportedModel);
  CHECK_THROWS_AS(local_qfi_x_closed(s, 3, testing::figure_angles()), UnsupportedModel);
  CHECK_THROWS_AS(thermal_global_qfi(s, 3, 1.0, 0.3, Param::x), UnsupportedModel);
  CHECK_THROWS_AS(delta_x_X0(s, 3, testing::worst_angles(), X0Variant::pert_general), UnsupportedModel);
}
