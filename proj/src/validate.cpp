#include "cohav/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "cohav/dynamics.hpp"
#include "cohav/errors.hpp"
#include "cohav/fisher.hpp"
#include "cohav/oracle/full_hilbert.hpp"
#include "cohav/perturb.hpp"
#include "cohav/scaling_fit.hpp"
#include "cohav/sweep_config.hpp"
#include "cohav/zzzz_exact.hpp"

namespace cohav {

namespace {

constexpr double kPi = std::numbers::pi;
const StateAngles kFigureAngles{kPi / 3, 3 * kPi / 8, kPi / 6, 5 * kPi / 8};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

CheckResult below(char suite, std::string name, double measured, double limit) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "< %g", limit);
  return {suite, std::move(name), measured < limit, measured, buf};
}

std::vector<CheckResult> suite_a() {
  std::vector<CheckResult> out;
  for (Param p : {Param::x, Param::omega1}) {
    std::vector<double> s, r;
    for (int i = 0; i < 9; ++i) {
      double v = std::pow(10.0, -3.0 + 2.0 * i / 8);
      ModelSpec spec{ModelKind::zzxx, p == Param::x ? 1.0 : v, p == Param::x ? v : 1.0, 1, 1, 1, 1};
      double exact = global_qfi_fd(spec, 4, kFigureAngles, p).value;
      auto kernel = kernel_for(spec, p);
      double pt = p == Param::x ? pt1_qfi_x(spec, 4, kFigureAngles, kernel).value
                                : pt1_qfi_omega1(spec, 4, kFigureAngles, kernel).value;
      s.push_back(v);
      r.push_back(std::abs(exact - pt));
    }
    double slope = fit_power_law(s, r).exponent;
    out.push_back({'a', p == Param::x ? "cubic residual in epsilon (ZZXX, x, N=4)" : "cubic residual in delta (ZZXX, omega1, N=4)",
                   std::abs(slope - 3.0) <= 0.2, slope, "in [2.8, 3.2]"});
  }
  return out;
}

std::vector<CheckResult> suite_b() {
  std::vector<CheckResult> out;
  struct Case {
    const char* name;
    Param p;
    double delta, epsilon;
  };
  const Case cases[] = {{"x eps=0.001", Param::x, 1, 0.001},         {"x eps=1", Param::x, 1, 1},
                        {"x eps=100", Param::x, 1, 100},             {"omega1 delta=100", Param::omega1, 100, 1},
                        {"omega1 delta=1", Param::omega1, 1, 1},     {"omega1 delta=0.001", Param::omega1, 0.001, 1},
                        {"omega0 delta=100", Param::omega0, 100, 1}, {"omega0 delta=1", Param::omega0, 1, 1},
                        {"omega0 delta=0.001", Param::omega0, 0.001, 1}};
  for (const auto& c : cases) {
    double worst = 0.0;
    for (int n : {1, 4, 16, 64, 256}) {
      ModelSpec spec{ModelKind::zzxx, c.delta, c.epsilon, 1, 1, 1, 1};
      auto states = propagate_shifted(spec, n, kFigureAngles, c.p);
      worst = std::max({worst, global_qfi(states).relative_discrepancy, local_qfi(states).relative_discrepancy});
    }
    out.push_back(below('b', std::string("two-step FD agreement, ZZXX ") + c.name + ", N<=256", worst, 1e-3));
  }
  return out;
}

std::vector<CheckResult> suite_c() {
  std::vector<CheckResult> out;
  double amp = 0.0, bus = 0.0, qfi = 0.0;
  for (ModelKind kind : {ModelKind::zzzz, ModelKind::zzxx, ModelKind::zzzx}) {
    ModelSpec spec{kind, 1, 1, 1, 1, 1, 1};
    for (int n = 1; n <= 8; ++n) {
      auto sym = propagate_product_state(spec, n, kFigureAngles);
      Eigen::VectorXcd full = oracle::propagate(spec, n, oracle::product_state(n, kFigureAngles), spec.t);
      amp = std::max(amp, (sym.amplitudes() - oracle::project_symmetric(n, full)).cwiseAbs().maxCoeff());
      bus = std::max(bus, (reduce_to_bus(sym).matrix() - oracle::bus_density(full)).cwiseAbs().maxCoeff());
    }
    for (Param p : {Param::x, Param::omega0, Param::omega1}) {
      double a = global_qfi_fd(spec, 6, kFigureAngles, p).value;
      double b = oracle::pure_qfi_fd(spec, 6, kFigureAngles, p, 1e-5);
      qfi = std::max(qfi, rel(a, b));
    }
  }
  out.push_back(below('c', "state amplitudes vs full Hilbert space, N<=8, all models", amp, 1e-8));
  out.push_back(below('c', "bus density vs explicit partial trace, N<=8", bus, 1e-8));
  out.push_back(below('c', "global QFI vs full Hilbert space, N=6, all parameters", qfi, 1e-6));
  return out;
}

std::vector<CheckResult> suite_d(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> polar(0.0, kPi / 2), azim(0.0, 2 * kPi), coef(0.3, 1.5);
  std::uniform_int_distribution<int> nd(1, 64);
  double worst_global = 0.0, worst_rho = 0.0;
  for (int i = 0; i < 20; ++i) {
    StateAngles a{polar(rng), azim(rng), polar(rng), azim(rng)};
    ModelSpec spec{ModelKind::zzzz, coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
    int n = nd(rng);
    for (Param p : {Param::x, Param::omega0, Param::omega1}) {
      double num = global_qfi_fd(spec, n, a, p).value;
      worst_global = std::max(worst_global, rel(num, global_qfi_closed(spec, n, a, p)));
    }
    Op2 d = reduce_to_bus(propagate_product_state(spec, n, a)).matrix() - reduced_rho_closed(spec, n, a).matrix();
    worst_rho = std::max(worst_rho, d.cwiseAbs().maxCoeff());
  }
  return {below('d', "ZZZZ global QFI closed forms vs pipeline, 20 random configurations", worst_global, 1e-6),
          below('d', "ZZZZ bus density closed form vs pipeline, 20 random configurations", worst_rho, 1e-10)};
}

}  // namespace

std::vector<CheckResult> run_validation(char suite, std::uint64_t seed) {
  switch (suite) {
    case 'a': return suite_a();
    case 'b': return suite_b();
    case 'c': return suite_c();
    case 'd': return suite_d(seed);
  }
  throw InvalidArgument(std::string("unknown validation suite '") + suite + "'");
}

std::vector<CheckResult> run_validation_suites(char suite, std::uint64_t seed) {
  if (suite != 0) return run_validation(suite, seed);
  std::vector<CheckResult> all;
  for (char s : {'a', 'b', 'c', 'd'}) {
    auto r = run_validation(s, seed);
    all.insert(all.end(), r.begin(), r.end());
  }
  return all;
}

}  // namespace cohav
