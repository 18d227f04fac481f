#include "cohav/zzzz_exact.hpp"

#include <cmath>
#include <limits>

namespace cohav {

namespace {

constexpr double kLn10 = 2.302585092994046;

void require_zzzz(const ModelSpec& spec, int n_probes) {
  spec.validate();
  if (spec.kind != ModelKind::zzzz) throw UnsupportedModel("closed forms exist only for the ZZZZ model");
  if (n_probes < 1) throw InvalidArgument("number of probes must be >= 1");
}

void require_statebad(const StateAngles& a) {
  constexpr double q = 0.7853981633974483;
  const auto near = [](double u, double v) { return std::abs(u - v) < 1e-12; };
  if (!near(a.alpha, q) || !near(a.phi, 0.0) || !near(a.beta, q) || !near(a.varphi, 0.0)) {
    throw InvalidArgument("statebad formulas need angles (pi/4, 0, pi/4, 0)");
  }
}

LogScalar from_log(double ln_value) {
  LogScalar r;
  r.log10_value = ln_value / kLn10;
  if (ln_value == -std::numeric_limits<double>::infinity()) return r;
  if (ln_value < std::log(std::numeric_limits<double>::min())) {
    r.signal = Signal::underflow;
    return r;
  }
  r.value = std::exp(ln_value);
  return r;
}

// F = cos^2(a) e^{-i eps x t} + sin^2(a) e^{i eps x t} and dF/dx.
struct Dephasing {
  cplx f;
  cplx df;
};

Dephasing dephasing(const ModelSpec& s, double alpha) {
  const double c2 = std::cos(alpha) * std::cos(alpha), s2 = std::sin(alpha) * std::sin(alpha);
  const double th = s.epsilon * s.x * s.t;
  const cplx em = std::polar(1.0, -th), ep = std::polar(1.0, th);
  return {c2 * em + s2 * ep, I_UNIT * s.epsilon * s.t * (s2 * ep - c2 * em)};
}

// F^N via the complex logarithm.
cplx power(cplx f, int n) {
  if (f == 0.0) return 0.0;
  return std::exp(double(n) * std::log(f));
}

}  // namespace

double global_qfi_closed(const ModelSpec& spec, int n_probes, const StateAngles& a, Param sel) {
  require_zzzz(spec, n_probes);
  const double n = n_probes;
  const double s2a = std::pow(std::sin(2 * a.alpha), 2), c2a = std::pow(std::cos(2 * a.alpha), 2);
  const double s2b = std::pow(std::sin(2 * a.beta), 2);
  const double t2 = spec.t * spec.t;
  switch (sel) {
    case Param::x: return n * n * t2 * spec.epsilon * spec.epsilon * c2a * s2b + n * t2 * spec.epsilon * spec.epsilon * s2a;
    case Param::omega1: return n * spec.delta * spec.delta * t2 * s2a;
    case Param::omega0: return spec.delta * spec.delta * t2 * s2b;
  }
  return 0.0;
}

BusDensity reduced_rho_closed(const ModelSpec& spec, int n_probes, const StateAngles& a) {
  require_zzzz(spec, n_probes);
  const Dephasing d = dephasing(spec, a.alpha);
  Op2 rho;
  rho(0, 0) = std::cos(a.beta) * std::cos(a.beta);
  rho(1, 1) = std::sin(a.beta) * std::sin(a.beta);
  rho(0, 1) = 0.5 * std::sin(2 * a.beta) * std::polar(1.0, -(a.varphi + spec.delta * spec.omega0 * spec.t)) *
              power(d.f, n_probes);
  rho(1, 0) = std::conj(rho(0, 1));
  return BusDensity(rho);
}

LogScalar local_qfi_x_closed(const ModelSpec& spec, int n_probes, const StateAngles& a) {
  require_zzzz(spec, n_probes);
  const double n = n_probes;
  const double s = std::pow(std::sin(2 * a.beta), 2);
  const Dephasing d = dephasing(spec, a.alpha);
  const double abs_f = std::abs(d.f);
  const double ninf = -std::numeric_limits<double>::infinity();
  if (s == 0.0) return from_log(ninf);
  if (abs_f == 0.0) return n_probes == 1 ? from_log(std::log(s * std::norm(d.df))) : from_log(ninf);
  const double ln_f = std::log(abs_f);
  const double ln_pre = std::log(s) + 2.0 * std::log(n) + (2.0 * n - 2.0) * ln_f;
  const double one_minus = -std::expm1(2.0 * n * ln_f);  // 1 - |F|^{2N}
  double bracket = std::norm(d.df);
  if (one_minus > 1e-14) {
    const double re = (d.f * std::conj(d.df)).real();
    bracket += std::exp((2.0 * n - 2.0) * ln_f) * re * re / one_minus;
  }
  if (bracket <= 0.0) return from_log(ninf);
  return from_log(ln_pre + std::log(bracket));
}

Uncertainty delta_x_X0(const ModelSpec& spec, int n_probes, const StateAngles& a, X0Variant variant) {
  require_zzzz(spec, n_probes);
  const double n = n_probes, t = spec.t, eps = spec.epsilon, x = spec.x;
  const double w0t = spec.delta * spec.omega0 * t;
  const double ninf = -std::numeric_limits<double>::infinity();
  double ln_inv = ninf;  // ln of delta^-2

  switch (variant) {
    case X0Variant::exact_statebad: {
      require_statebad(a);
      const double th = eps * t * x;
      const double c = std::abs(std::cos(th)), cw = std::abs(std::cos(w0t));
      if (c == 0.0 || cw == 0.0 || std::sin(th) == 0.0 || eps == 0.0 || t == 0.0) break;
      const double ln_num = 2.0 * std::log(n * t * std::abs(eps)) + 2.0 * std::log(std::abs(std::tan(th)));
      const double expo = -2.0 * n * std::log(c) - 2.0 * std::log(cw);
      if (expo <= 0.0) break;
      // ln(e^expo - 1)
      const double ln_den = expo > 30.0 ? expo + std::log1p(-std::exp(-expo)) : std::log(std::expm1(expo));
      ln_inv = ln_num - ln_den;
      break;
    }
    case X0Variant::pert_statebad: {
      require_statebad(a);
      const double num = n * n * std::pow(t, 4) * std::pow(eps, 4) * x * x;
      const double den = n * t * t * x * x * eps * eps + std::pow(std::tan(w0t), 2);
      if (num == 0.0 || den == 0.0) break;
      ln_inv = std::log(num) - std::log(den);
      break;
    }
    case X0Variant::pert_general: {
      const double s2b = std::sin(2 * a.beta);
      const double ca = std::abs(std::cos(a.alpha)), sa = std::abs(std::sin(a.alpha));
      double mean = 0.0, slope = 0.0;
      for (int k = 0; k <= n_probes; ++k) {
        // m = N/2 - k, C(N, m + N/2) = C(N, N - k), cos^{N+2m} sin^{N-2m}
        const double m = 0.5 * n - k;
        const double pc = 2.0 * (n - k), ps = 2.0 * k;
        if ((pc > 0 && ca == 0.0) || (ps > 0 && sa == 0.0)) continue;
        const double ln_w = log_binomial(n_probes, n_probes - k) + (pc > 0 ? pc * std::log(ca) : 0.0) +
                            (ps > 0 ? ps * std::log(sa) : 0.0);
        const double w = std::exp(ln_w);
        const double arg = w0t + a.varphi + 2.0 * eps * x * t * m;
        mean += w * std::cos(arg);
        slope += w * m * std::sin(arg);
      }
      mean *= s2b;
      const double den = std::pow(2.0 * eps * t * s2b * slope, 2);
      const double num = 1.0 - mean * mean;
      if (!(den > 0.0) || !(num > 0.0)) break;
      ln_inv = std::log(den) - std::log(num);
      break;
    }
  }

  Uncertainty u;
  const LogScalar v = from_log(ln_inv);
  u.inverse_squared = v.value;
  u.log10_inverse_squared = v.log10_value;
  if (ln_inv == ninf) {
    u.signal = Signal::insensitive;
    u.uncertainty = std::numeric_limits<double>::infinity();
    return u;
  }
  u.signal = v.signal;
  u.uncertainty = std::exp(-0.5 * ln_inv);
  return u;
}

double thermal_global_qfi(const ModelSpec& spec, int n_probes, double beta_th, double bus_beta, Param sel) {
  require_zzzz(spec, n_probes);
  if (!(beta_th >= 0.0) || !std::isfinite(beta_th)) throw InvalidArgument("inverse temperature must be >= 0");
  const double n = n_probes;
  const double th2 = std::pow(std::tanh(beta_th * spec.omega1), 2);
  const double s2b = std::pow(std::sin(2 * bus_beta), 2);
  const double t2 = spec.t * spec.t;
  switch (sel) {
    case Param::x: return s2b * spec.epsilon * spec.epsilon * t2 * (n * n * th2 + n * (1.0 - th2));
    case Param::omega1: return n * beta_th * beta_th * (1.0 - th2);
    case Param::omega0: return spec.delta * spec.delta * t2 * s2b;
  }
  return 0.0;
}

BusDensity thermal_reduced_rho(const ModelSpec& spec, int n_probes, double beta_th, double bus_beta,
                               double bus_varphi) {
  require_zzzz(spec, n_probes);
  // Each configuration with k probes in |1> has weight p0^{N-k} p1^k and
  // imprints the bus phase e^{-i eps x t (N - 2k)}.
  const double b = beta_th * spec.omega1;
  const double ln_p0 = -b - (std::abs(b) + std::log1p(std::exp(-2.0 * std::abs(b))));
  const double ln_p1 = b - (std::abs(b) + std::log1p(std::exp(-2.0 * std::abs(b))));
  const double th = spec.epsilon * spec.x * spec.t;
  cplx sum = 0.0;
  for (int k = 0; k <= n_probes; ++k) {
    const double ln_w = log_binomial(n_probes, k) + (n_probes - k) * ln_p0 + k * ln_p1;
    sum += std::exp(ln_w) * std::polar(1.0, -th * (n_probes - 2.0 * k));
  }
  Op2 rho;
  rho(0, 0) = std::cos(bus_beta) * std::cos(bus_beta);
  rho(1, 1) = std::sin(bus_beta) * std::sin(bus_beta);
  rho(0, 1) = 0.5 * std::sin(2 * bus_beta) * std::polar(1.0, -(bus_varphi + spec.delta * spec.omega0 * spec.t)) * sum;
  rho(1, 0) = std::conj(rho(0, 1));
  return BusDensity(rho);
}

EquivalenceReport thermal_local_equivalence_check(const ModelSpec& spec, int n_probes, double beta_th,
                                                  double bus_beta, double bus_varphi) {
  const double alpha = thermal_equivalent_alpha({beta_th, spec.omega1});
  const Op2 pure = reduced_rho_closed(spec, n_probes, {alpha, 0.0, bus_beta, bus_varphi}).matrix();
  const Op2 thermal = thermal_reduced_rho(spec, n_probes, beta_th, bus_beta, bus_varphi).matrix();
  EquivalenceReport r;
  r.max_deviation = (pure - thermal).cwiseAbs().maxCoeff();
  r.pass = r.max_deviation < 1e-10;
  return r;
}

}  // namespace cohav
