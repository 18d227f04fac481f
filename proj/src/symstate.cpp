#include "cohav/symstate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cohav/errors.hpp"

namespace cohav {

namespace {

void require_probes(int n_probes) {
  if (n_probes < 1) {
    throw InvalidArgument("number of probes must be >= 1, got " + std::to_string(n_probes));
  }
}

// log|c|^p with the convention 0^0 = 1; -inf for 0^p, p > 0.
double log_pow_abs(double c, int p) {
  if (p == 0) return 0.0;
  if (c == 0.0) return -std::numeric_limits<double>::infinity();
  return p * std::log(std::abs(c));
}

double sign_pow(double c, int p) { return (c < 0.0 && (p % 2 == 1)) ? -1.0 : 1.0; }

}  // namespace

bool StateAngles::finite() const {
  return std::isfinite(alpha) && std::isfinite(phi) && std::isfinite(beta) && std::isfinite(varphi);
}

SymmetricState::SymmetricState(int n_probes, Eigen::VectorXcd amplitudes)
    : n_probes_(n_probes), amplitudes_(std::move(amplitudes)) {
  require_probes(n_probes);
  if (amplitudes_.size() != 2 * (Eigen::Index(n_probes) + 1)) {
    throw InvalidArgument("symmetric state of " + std::to_string(n_probes) + " probes needs " +
                          std::to_string(2 * (n_probes + 1)) + " amplitudes, got " +
                          std::to_string(amplitudes_.size()));
  }
  const double nrm = amplitudes_.norm();
  if (!(std::abs(nrm - 1.0) <= 1e-10)) {
    throw InvalidArgument("symmetric state is not normalized (norm " + std::to_string(nrm) + ")");
  }
}

std::complex<double> SymmetricState::amplitude(double m, int s) const {
  const double kd = 0.5 * n_probes_ - m;
  const long k = std::lround(kd);
  if (std::abs(kd - double(k)) > 1e-9 || k < 0 || k > n_probes_ || (s != 0 && s != 1)) {
    throw InvalidArgument("no basis state |m=" + std::to_string(m) + ", s=" + std::to_string(s) + ">");
  }
  return amplitudes_[index(int(k), s)];
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(double(n - k) + 1.0);
}

SymmetricState build_product_state(int n_probes, const StateAngles& angles) {
  require_probes(n_probes);
  if (!angles.finite()) throw InvalidArgument("state angles must be finite");

  const double ca = std::cos(angles.alpha);
  const double sa = std::sin(angles.alpha);
  const std::complex<double> bus0 = std::cos(angles.beta);
  const std::complex<double> bus1 = std::sin(angles.beta) * std::polar(1.0, angles.varphi);

  Eigen::VectorXcd amp(2 * (Eigen::Index(n_probes) + 1));
  for (int k = 0; k <= n_probes; ++k) {
    // k probes in |1>: sqrt(C(N,k)) cos^{N-k} (sin e^{i phi})^k
    const double logmag =
        0.5 * log_binomial(n_probes, k) + log_pow_abs(ca, n_probes - k) + log_pow_abs(sa, k);
    const double sign = sign_pow(ca, n_probes - k) * sign_pow(sa, k);
    const std::complex<double> probe = sign * std::exp(logmag) * std::polar(1.0, k * angles.phi);
    amp[SymmetricState::index(k, 0)] = probe * bus0;
    amp[SymmetricState::index(k, 1)] = probe * bus1;
  }
  amp /= amp.norm();
  return SymmetricState(n_probes, std::move(amp));
}

double jx_element(int n_probes, int k) {
  return 0.5 * std::sqrt(double(k + 1) * double(n_probes - k));
}

Eigen::MatrixXd collective_jz(int n_probes) {
  require_probes(n_probes);
  Eigen::VectorXd diag(n_probes + 1);
  for (int k = 0; k <= n_probes; ++k) diag[k] = 0.5 * n_probes - k;
  return diag.asDiagonal();
}

Eigen::MatrixXd collective_jx(int n_probes) {
  require_probes(n_probes);
  Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(n_probes + 1, n_probes + 1);
  for (int k = 0; k < n_probes; ++k) {
    jx(k, k + 1) = jx(k + 1, k) = jx_element(n_probes, k);
  }
  return jx;
}

Eigen::MatrixXcd collective_jy(int n_probes) {
  const Eigen::MatrixXcd jz = collective_jz(n_probes).cast<std::complex<double>>();
  const Eigen::MatrixXcd jx = collective_jx(n_probes).cast<std::complex<double>>();
  return std::complex<double>(0.0, -1.0) * (jz * jx - jx * jz);
}

double thermal_equivalent_alpha(const ThermalProbeSpec& spec) {
  if (!std::isfinite(spec.beta_th) || !std::isfinite(spec.omega1)) {
    throw InvalidArgument("thermal spec must be finite");
  }
  if (spec.beta_th < 0.0) throw InvalidArgument("beta_th must be >= 0");
  // e^{-b w} / (e^{-b w} + e^{b w}) = 1 / (1 + e^{2 b w})
  const double weight0 = 1.0 / (1.0 + std::exp(2.0 * spec.beta_th * spec.omega1));
  return std::acos(std::sqrt(weight0));
}

std::string to_text(const SymmetricState& state) {
  std::string out = "N=" + std::to_string(state.n_probes()) + "\n";
  char line[128];
  for (int k = 0; k <= state.n_probes(); ++k) {
    for (int s = 0; s < 2; ++s) {
      const auto c = state.amplitudes()[SymmetricState::index(k, s)];
      std::snprintf(line, sizeof line, "%.17g %d %.17g %.17g\n", state.m_of(k), s, c.real(), c.imag());
      out += line;
    }
  }
  return out;
}

SymmetricState state_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header) || header.rfind("N=", 0) != 0) {
    throw InvalidArgument("state text must start with a 'N=<int>' line");
  }
  const int n = std::stoi(header.substr(2));
  require_probes(n);
  Eigen::VectorXcd amp(2 * (Eigen::Index(n) + 1));
  for (int k = 0; k <= n; ++k) {
    for (int s = 0; s < 2; ++s) {
      double m = 0, re = 0, im = 0;
      int ss = -1;
      if (!(in >> m >> ss >> re >> im)) throw InvalidArgument("truncated state text");
      if (m != 0.5 * n - k || ss != s) throw InvalidArgument("state text lines out of index order");
      amp[SymmetricState::index(k, s)] = {re, im};
    }
  }
  return SymmetricState(n, std::move(amp));
}

}  // namespace cohav
