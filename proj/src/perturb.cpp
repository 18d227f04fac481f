#include "cohav/perturb.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "cohav/quadrature.hpp"

namespace cohav {

namespace {

using Op4 = Eigen::Matrix4cd;

void check_kernel(const ModelSpec& spec, const CorrelationKernel& kernel, Param expected) {
  spec.validate();
  if (kernel.kind != spec.kind) throw InvalidArgument("correlation kernel built for a different model");
  if (kernel.param != expected) throw InvalidArgument("correlation kernel built for a different parameter");
  if (kernel.order < 8) throw InvalidArgument("quadrature order must be >= 8");
}

void check_probes(int n_probes) {
  if (n_probes < 1) throw InvalidArgument("number of probes must be >= 1");
}

// a (x) b with the probe as the slow index, matching |p, s> -> 2p + s.
Op4 kron(const Op2& a, const Op2& b) {
  Op4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// <phi| G |phi> over the probe factor of a probe (x) bus operator.
Op2 probe_expectation(const Op4& g, const Ket2& phi) {
  Op2 out = Op2::Zero();
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) out += std::conj(phi[p]) * phi[q] * g.block<2, 2>(2 * p, 2 * q);
  return out;
}

struct Angles2 {
  Ket2 phi;
  Ket2 xi;
};

Angles2 kets(const StateAngles& a) {
  if (!a.finite()) throw InvalidArgument("state angles must be finite");
  return {qubit_ket(a.alpha, a.phi), qubit_ket(a.beta, a.varphi)};
}

// Probe and bus operators in the interaction picture of H_0.
struct Pictures {
  double probe_rate;  // delta omega1
  double bus_rate;    // delta omega0
  Op2 probe(const Op2& op, double t) const { return rotate_about_z(op, probe_rate * t); }
  Op2 bus(const Op2& op, double t) const { return rotate_about_z(op, bus_rate * t); }
};

Pictures pictures(const ModelSpec& s) { return {s.delta * s.omega1, s.delta * s.omega0}; }

struct Coefficients {
  double n1 = 0.0;
  double n2 = 0.0;
};

// int int over [0,t]^2 of the N and N^2 kernels for G = sum_nu S'_nu R_nu.
Coefficients pt1_x_integrals(const ModelSpec& spec, const Angles2& k, int order) {
  const auto channels = interaction_channels(spec.kind);
  const Pictures pic = pictures(spec);
  const QuadratureRule rule = gauss_legendre(order, 0.0, spec.t);
  const std::size_t n = rule.nodes.size();
  const std::size_t c = channels.size();

  std::vector<Op2> s(n * c), r(n * c);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t nu = 0; nu < c; ++nu) {
      s[a * c + nu] = pic.probe(0.5 * channels[nu].probe, rule.nodes[a]);
      r[a * c + nu] = pic.bus(channels[nu].bus, rule.nodes[a]);
    }
  }
  Coefficients out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double w = rule.weights[a] * rule.weights[b];
      for (std::size_t nu = 0; nu < c; ++nu) {
        for (std::size_t mu = 0; mu < c; ++mu) {
          const Op2& s1 = s[a * c + nu];
          const Op2& s2 = s[b * c + mu];
          const Op2& r1 = r[a * c + nu];
          const Op2& r2 = r[b * c + mu];
          const cplx es1 = expect(s1, k.phi), es2 = expect(s2, k.phi);
          const cplx er1 = expect(r1, k.xi), er2 = expect(r2, k.xi);
          const cplx kphi = expect(s1 * s2, k.phi) - es1 * es2;
          const cplx r12 = expect(r1 * r2, k.xi);
          out.n1 += w * (kphi * r12).real();
          out.n2 += w * (es1 * es2 * (r12 - er1 * er2)).real();
        }
      }
    }
  }
  out.n1 *= 4.0;
  out.n2 *= 4.0;
  return out;
}

}  // namespace

PtRegime pt_regime(const ModelSpec& spec, int n_probes) {
  const double n = n_probes;
  return {std::abs(spec.epsilon) * n, std::abs(spec.delta) * n,
          std::abs(spec.delta) * (n * std::abs(spec.omega1) + std::abs(spec.omega0)) * spec.t / 2.0};
}

Pt1Result pt1_qfi_x(const ModelSpec& spec, int n_probes, const StateAngles& angles, const CorrelationKernel& kernel) {
  check_kernel(spec, kernel, Param::x);
  check_probes(n_probes);
  const Coefficients c = pt1_x_integrals(spec, kets(angles), kernel.order);
  const double e2 = spec.epsilon * spec.epsilon;
  const double n = n_probes;
  Pt1Result r;
  r.linear_coefficient = e2 * c.n1;
  r.quadratic_coefficient = e2 * c.n2;
  r.value = r.linear_coefficient * n + r.quadratic_coefficient * n * n;
  r.regime = pt_regime(spec, n_probes);
  return r;
}

double hl_condition(const ModelSpec& spec, const StateAngles& angles, const CorrelationKernel& kernel) {
  check_kernel(spec, kernel, Param::x);
  return pt1_x_integrals(spec, kets(angles), kernel.order).n2 / 4.0;
}

Pt1Result pt1_qfi_omega1(const ModelSpec& spec, int n_probes, const StateAngles& angles,
                         const CorrelationKernel& kernel) {
  check_kernel(spec, kernel, Param::omega1);
  check_probes(n_probes);
  const auto channels = interaction_channels(spec.kind);
  for (const auto& a : channels)
    for (const auto& b : channels)
      if (commutator(a.bus, b.bus).cwiseAbs().maxCoeff() > 1e-14)
        throw UnsupportedModel("omega1 perturbation theory needs commuting bus operators");

  const Angles2 k = kets(angles);
  Op4 generator = Op4::Zero();
  for (const auto& ch : channels) generator += spec.epsilon * spec.x * 0.5 * kron(ch.probe, ch.bus);
  const Eigen::SelfAdjointEigenSolver<Op4> es(generator);
  const Op4 z_half = kron(0.5 * pauli_z(), identity2());

  const QuadratureRule rule = gauss_legendre(kernel.order, 0.0, spec.t);
  const std::size_t n = rule.nodes.size();
  std::vector<Op4> big(n);
  std::vector<Op2> small(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Eigen::Vector4cd phase = (-I_UNIT * es.eigenvalues().cast<cplx>() * rule.nodes[a]).array().exp();
    const Op4 u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    big[a] = u.adjoint() * z_half * u;
    small[a] = probe_expectation(big[a], k.phi);
  }
  double n1 = 0.0, n2 = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double w = rule.weights[a] * rule.weights[b];
      const Op2 kphi = probe_expectation(big[a] * big[b], k.phi) - small[a] * small[b];
      n1 += w * expect(kphi, k.xi).real();
      n2 += w * (expect(small[a] * small[b], k.xi) - expect(small[a], k.xi) * expect(small[b], k.xi)).real();
    }
  }
  const double d2 = 4.0 * spec.delta * spec.delta;
  const double nn = n_probes;
  Pt1Result r;
  r.linear_coefficient = d2 * n1;
  r.quadratic_coefficient = d2 * n2;
  r.value = r.linear_coefficient * nn + r.quadratic_coefficient * nn * nn;
  r.regime = pt_regime(spec, n_probes);
  return r;
}

Pt2Result pt2_qfi_zeroth(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param sel) {
  spec.validate();
  check_probes(n_probes);
  const SymmetricState psi = build_product_state(n_probes, angles);
  Eigen::MatrixXd dh;
  switch (sel) {
    case Param::x: dh = assemble_x_derivative(spec, n_probes); break;
    case Param::omega1: {
      const Eigen::VectorXd jz = collective_jz(n_probes).diagonal();
      dh = Eigen::MatrixXd::Zero(psi.dim(), psi.dim());
      for (int k = 0; k <= n_probes; ++k)
        for (int s = 0; s < 2; ++s) dh(SymmetricState::index(k, s), SymmetricState::index(k, s)) = spec.delta * jz[k];
      break;
    }
    case Param::omega0: throw UnsupportedModel("no zeroth-order PT2 expression for omega0");
  }
  const Eigen::VectorXcd v = dh.cast<cplx>() * psi.amplitudes();
  const double mean = psi.amplitudes().dot(v).real();
  const double var = std::max(0.0, v.squaredNorm() - mean * mean);
  return {4.0 * spec.t * spec.t * var, pt_regime(spec, n_probes)};
}

namespace {

struct Expansion {
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;  // <A> = m0 + eps m1 + eps^2 m2
  double q0 = 0.0, q1 = 0.0, q2 = 0.0;  // same for A^2
};

// Dyson series of <U_I^dag O U_I> through second order for O = A_H and A_H^2.
Expansion dyson(const ModelSpec& spec, int n_probes, const Angles2& k, const Op2& a, int order) {
  const auto channels = interaction_channels(spec.kind);
  const Pictures pic = pictures(spec);
  const Op2 ah = pic.bus(a, spec.t);
  const Op2 ah2 = ah * ah;
  const double n = n_probes;

  const QuadratureRule outer = gauss_legendre(order, 0.0, spec.t);
  const QuadratureRule unit = gauss_legendre(order, 0.0, 1.0);

  const auto s_at = [&](const Channel& ch, double t) { return pic.probe(0.5 * spec.x * ch.probe, t); };
  const auto r_at = [&](const Channel& ch, double t) { return pic.bus(ch.bus, t); };

  Expansion e;
  e.m0 = expect(ah, k.xi).real();
  e.q0 = expect(ah2, k.xi).real();

  cplx m1 = 0.0, q1 = 0.0, m2 = 0.0, q2 = 0.0;
  for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
    const double t1 = outer.nodes[i];
    for (const auto& nu : channels) {
      const Op2 s1 = s_at(nu, t1), r1 = r_at(nu, t1);
      const cplx es1 = expect(s1, k.phi);
      const Op2 c1 = commutator(r1, ah), d1 = commutator(r1, ah2);
      m1 += outer.weights[i] * I_UNIT * n * es1 * expect(c1, k.xi);
      q1 += outer.weights[i] * I_UNIT * n * es1 * expect(d1, k.xi);

      for (std::size_t j = 0; j < unit.nodes.size(); ++j) {
        const double t2 = unit.nodes[j] * t1;
        const double w = outer.weights[i] * unit.weights[j] * t1;
        for (const auto& mu : channels) {
          const Op2 s2 = s_at(mu, t2), r2 = r_at(mu, t2);
          const cplx es2 = expect(s2, k.phi);
          const cplx s21 = expect(s2 * s1, k.phi), s12 = expect(s1 * s2, k.phi);
          const auto term = [&](const Op2& c) {
            return n * (n - 1.0) * es2 * es1 * expect(commutator(r2, c), k.xi) +
                   n * (s21 * expect(r2 * c, k.xi) - s12 * expect(c * r2, k.xi));
          };
          m2 -= w * term(c1);
          q2 -= w * term(d1);
        }
      }
    }
  }
  e.m1 = m1.real();
  e.q1 = q1.real();
  e.m2 = m2.real();
  e.q2 = q2.real();
  return e;
}

}  // namespace

AppendixResult appendix_local_uncertainty(const ModelSpec& spec, int n_probes, const StateAngles& angles,
                                          const Op2& observable, Param sel, const CorrelationKernel& kernel,
                                          int measurements) {
  check_kernel(spec, kernel, sel);
  check_probes(n_probes);
  if (measurements < 1) throw InvalidArgument("number of measurements must be >= 1");
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("observable must be Hermitian");
  const Angles2 k = kets(angles);
  const double eps = spec.epsilon;

  const Expansion e = dyson(spec, n_probes, k, observable, kernel.order);
  AppendixResult r;
  r.mean = e.m0 + eps * e.m1 + eps * eps * e.m2;
  const double var = (e.q0 - e.m0 * e.m0) + eps * (e.q1 - 2.0 * e.m0 * e.m1) +
                     eps * eps * (e.q2 - 2.0 * e.m0 * e.m2 - e.m1 * e.m1);
  r.variance_clamped = var < 0.0;
  r.variance = std::max(0.0, var);

  const double theta = parameter_value(spec, sel);
  const double h = 1e-5 * std::max(1.0, std::abs(theta));
  const auto mean_at = [&](double v) {
    const Expansion x = dyson(with_parameter(spec, sel, v), n_probes, k, observable, kernel.order);
    return x.m0 + eps * x.m1 + eps * eps * x.m2;
  };
  r.derivative = (mean_at(theta + h) - mean_at(theta - h)) / (2.0 * h);

  const double scale = observable.cwiseAbs().maxCoeff();
  if (std::abs(r.derivative) <= std::max(1e-14, 16.0 * std::numeric_limits<double>::epsilon() * scale / h)) {
    r.signal = Signal::insensitive;
    r.uncertainty = std::numeric_limits<double>::infinity();
    r.inverse_squared = 0.0;
    return r;
  }
  r.inverse_squared = measurements * r.derivative * r.derivative / r.variance;
  r.uncertainty = std::sqrt(r.variance) / (std::sqrt(double(measurements)) * std::abs(r.derivative));
  return r;
}

}  // namespace cohav
