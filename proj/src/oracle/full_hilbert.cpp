#include "cohav/oracle/full_hilbert.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cohav::oracle {

namespace {

using Index = Eigen::Index;

Index full_dim(int n_probes) { return Index(1) << (n_probes + 1); }

// Bit position of probe i (0-based) in the basis index; the bus is bit 0.
int probe_bit(int n_probes, int i) { return n_probes - i; }

double z_sign(Index basis, int bit) { return ((basis >> bit) & 1) ? -1.0 : 1.0; }

void add_pair(Eigen::VectorXcd& out, const Eigen::VectorXcd& psi, int bit_a, const Op2& op_a, int bit_b,
              const Op2& op_b, cplx coef) {
  for (Index b = 0; b < psi.size(); ++b) {
    const int va = int((b >> bit_a) & 1);
    const int vb = int((b >> bit_b) & 1);
    for (int wa = 0; wa < 2; ++wa) {
      const cplx ea = op_a(wa, va);
      if (ea == 0.0) continue;
      for (int wb = 0; wb < 2; ++wb) {
        const cplx eb = op_b(wb, vb);
        if (eb == 0.0) continue;
        Index target = (b & ~(Index(1) << bit_a)) | (Index(wa) << bit_a);
        target = (target & ~(Index(1) << bit_b)) | (Index(wb) << bit_b);
        out[target] += coef * ea * eb * psi[b];
      }
    }
  }
}

Op2 probe_pauli(ModelKind kind) { return kind == ModelKind::zzxx ? pauli_x() : pauli_z(); }
Op2 bus_pauli(ModelKind kind) { return kind == ModelKind::zzzz ? pauli_z() : pauli_x(); }

double norm_bound(const ModelSpec& spec, int n) {
  return std::abs(spec.delta) * (std::abs(spec.omega1) * n + std::abs(spec.omega0)) / 2.0 +
         std::abs(spec.epsilon * spec.x) * n / 2.0;
}

}  // namespace

Eigen::VectorXcd product_state(int n_probes, const StateAngles& a) {
  const Ket2 probe = qubit_ket(a.alpha, a.phi);
  const Ket2 bus = qubit_ket(a.beta, a.varphi);
  Eigen::VectorXcd psi(full_dim(n_probes));
  for (Index b = 0; b < psi.size(); ++b) {
    cplx amp = bus[int(b & 1)];
    for (int i = 0; i < n_probes; ++i) amp *= probe[int((b >> probe_bit(n_probes, i)) & 1)];
    psi[b] = amp;
  }
  return psi;
}

Eigen::VectorXcd apply_hamiltonian(const ModelSpec& spec, int n, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  // Free part: diagonal in the computational basis.
  for (Index b = 0; b < psi.size(); ++b) {
    double e = spec.omega0 / 2.0 * z_sign(b, 0);
    for (int i = 0; i < n; ++i) e += spec.omega1 / 2.0 * z_sign(b, probe_bit(n, i));
    out[b] += spec.delta * e * psi[b];
  }
  const Op2 p = probe_pauli(spec.kind);
  const Op2 r = bus_pauli(spec.kind);
  for (int i = 0; i < n; ++i) add_pair(out, psi, probe_bit(n, i), p, 0, r, spec.epsilon * spec.x / 2.0);
  return out;
}

Eigen::MatrixXcd hamiltonian(const ModelSpec& spec, int n) {
  const Index d = full_dim(n);
  Eigen::MatrixXcd h(d, d);
  for (Index c = 0; c < d; ++c) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e[c] = 1.0;
    h.col(c) = apply_hamiltonian(spec, n, e);
  }
  return h;
}

Eigen::VectorXcd propagate(const ModelSpec& spec, int n, const Eigen::VectorXcd& psi, double t) {
  if (t == 0.0) return psi;
  const int steps = std::max(1, int(std::ceil(norm_bound(spec, n) * std::abs(t) / 0.5)));
  const double dt = t / steps;
  Eigen::VectorXcd cur = psi;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXcd term = cur;
    Eigen::VectorXcd acc = cur;
    for (int k = 1; k < 60; ++k) {
      term = apply_hamiltonian(spec, n, term) * (cplx(0.0, -dt) / double(k));
      acc += term;
      if (term.norm() < 1e-20) break;
    }
    cur = acc;
  }
  return cur;
}

Eigen::MatrixXcd symmetric_isometry(int n) {
  const Index d = full_dim(n);
  Eigen::MatrixXcd iso = Eigen::MatrixXcd::Zero(d, 2 * (n + 1));
  std::vector<double> count(std::size_t(n + 1), 0.0);
  for (Index p = 0; p < (Index(1) << n); ++p) count[std::size_t(std::popcount(std::uint64_t(p)))] += 1.0;
  for (Index p = 0; p < (Index(1) << n); ++p) {
    const int k = std::popcount(std::uint64_t(p));
    const double w = 1.0 / std::sqrt(count[std::size_t(k)]);
    for (int s = 0; s < 2; ++s) iso(2 * p + s, 2 * k + s) = w;
  }
  return iso;
}

Eigen::VectorXcd project_symmetric(int n, const Eigen::VectorXcd& psi) {
  return symmetric_isometry(n).adjoint() * psi;
}

Op2 bus_density(const Eigen::VectorXcd& psi) {
  Op2 rho = Op2::Zero();
  for (Index p = 0; p < psi.size() / 2; ++p)
    for (int s = 0; s < 2; ++s)
      for (int s2 = 0; s2 < 2; ++s2) rho(s, s2) += psi[2 * p + s] * std::conj(psi[2 * p + s2]);
  return rho;
}

double pure_qfi_fd(const ModelSpec& spec, int n, const StateAngles& angles, Param p, double h) {
  const double theta = parameter_value(spec, p);
  const Eigen::VectorXcd psi0 = product_state(n, angles);
  const auto run = [&](double value) {
    const ModelSpec s = with_parameter(spec, p, value);
    return propagate(s, n, psi0, s.t);
  };
  const Eigen::VectorXcd c = run(theta);
  const Eigen::VectorXcd d = (run(theta + h) - run(theta - h)) / (2.0 * h);
  return 4.0 * (d.squaredNorm() - std::norm(c.dot(d)));
}

double mixed_qfi_fd(const std::function<Eigen::MatrixXcd(double)>& rho_of, double theta, double h) {
  const Eigen::MatrixXcd rho = rho_of(theta);
  const Eigen::MatrixXcd drho = (rho_of(theta + h) - rho_of(theta - h)) / (2.0 * h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  const Eigen::VectorXd p = es.eigenvalues();
  const Eigen::MatrixXcd d = es.eigenvectors().adjoint() * drho * es.eigenvectors();
  double qfi = 0.0;
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < p.size(); ++b) {
      const double den = p[a] + p[b];
      if (den > 1e-12) qfi += 2.0 * std::norm(d(a, b)) / den;
    }
  return qfi;
}

Eigen::MatrixXcd thermal_density(const ModelSpec& spec, int n, double beta_th, double bus_beta, double bus_varphi) {
  const double z = std::exp(-beta_th * spec.omega1) + std::exp(beta_th * spec.omega1);
  const double w0 = std::exp(-beta_th * spec.omega1) / z;
  const double w1 = std::exp(beta_th * spec.omega1) / z;
  const Ket2 bus = qubit_ket(bus_beta, bus_varphi);
  const Index d = full_dim(n);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (Index config = 0; config < (Index(1) << n); ++config) {
    const int ones = std::popcount(std::uint64_t(config));
    const double weight = std::pow(w0, n - ones) * std::pow(w1, ones);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
    psi[2 * config] = bus[0];
    psi[2 * config + 1] = bus[1];
    psi = propagate(spec, n, psi, spec.t);
    rho += weight * psi * psi.adjoint();
  }
  return rho;
}

Op2 thermal_bus_density(const ModelSpec& spec, int n, double beta_th, double bus_beta, double bus_varphi) {
  const Eigen::MatrixXcd rho = thermal_density(spec, n, beta_th, bus_beta, bus_varphi);
  Op2 bus = Op2::Zero();
  for (Index p = 0; p < rho.rows() / 2; ++p)
    for (int s = 0; s < 2; ++s)
      for (int s2 = 0; s2 < 2; ++s2) bus(s, s2) += rho(2 * p + s, 2 * p + s2);
  return bus;
}

}  // namespace cohav::oracle
