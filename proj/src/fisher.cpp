#include "cohav/fisher.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cohav {

namespace {

constexpr double kDensityTol = 1e-12;
constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

double step_for(double relative, double theta) { return relative * std::max(1.0, std::abs(theta)); }

double discrepancy(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// 4(<d|d> - |<c|d>|^2) with d = (p - m) / 2h; sets clamped on negative round-off.
double pure_qfi(const SymmetricState& c, const Eigen::VectorXcd& diff, double h, bool& clamped) {
  const Eigen::VectorXcd d = diff / (2.0 * h);
  const double value = 4.0 * (d.squaredNorm() - std::norm(c.amplitudes().dot(d)));
  if (value < 0.0) {
    clamped = true;
    return 0.0;
  }
  return value;
}

QfiResult combine(double primary, double check, const ShiftedStates& s, bool clamped) {
  QfiResult r;
  r.value = primary;
  r.value_check = check;
  r.fd_step_primary = s.h_primary;
  r.fd_step_check = s.h_check;
  r.relative_discrepancy = discrepancy(primary, check);
  r.clamped = clamped;
  r.ill_conditioned = r.relative_discrepancy > kFdDiscrepancyTolerance;
  return r;
}

}  // namespace

BusDensity::BusDensity(const Op2& rho) : rho_(rho) {
  if (!rho.allFinite()) throw InvalidArgument("bus density has non-finite entries");
  if (std::abs(rho.trace() - 1.0) > kDensityTol) throw InvalidArgument("bus density trace differs from 1");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kDensityTol) throw InvalidArgument("bus density not Hermitian");
  const double lowest = bloch().norm();  // eigenvalues are (1 +/- |r|)/2
  if ((1.0 - lowest) / 2.0 < -kDensityTol) throw InvalidArgument("bus density has a negative eigenvalue");
}

Eigen::Vector3d BusDensity::bloch() const {
  return {2.0 * rho_(0, 1).real(), -2.0 * rho_(0, 1).imag(), (rho_(0, 0) - rho_(1, 1)).real()};
}

ShiftedStates propagate_shifted(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param param) {
  spec.validate();
  const SymmetricState psi0 = build_product_state(n_probes, angles);
  const double theta = parameter_value(spec, param);
  const double hp = step_for(kFdStepPrimary, theta);
  const double hc = step_for(kFdStepCheck, theta);
  const Eigen::MatrixXd dh = assemble_derivative(spec, n_probes, param);
  const auto es = [&](double value) { return eigensystem(assemble(with_parameter(spec, param, value), n_probes)); };
  const Eigensystem pp = es(theta + hp), mp = es(theta - hp), pc = es(theta + hc), mc = es(theta - hc);
  return ShiftedStates{param,
                       theta,
                       hp,
                       hc,
                       evolve(assemble(spec, n_probes), spec.t, psi0),
                       evolve(pp, spec.t, psi0),
                       evolve(mp, spec.t, psi0),
                       evolve(pc, spec.t, psi0),
                       evolve(mc, spec.t, psi0),
                       propagation_difference(mp, pp, 2.0 * hp * dh, spec.t, psi0.amplitudes()),
                       propagation_difference(mc, pc, 2.0 * hc * dh, spec.t, psi0.amplitudes())};
}

QfiResult global_qfi(const ShiftedStates& s) {
  bool clamped = false;
  const double primary = pure_qfi(s.center, s.diff_primary, s.h_primary, clamped);
  const double check = pure_qfi(s.center, s.diff_check, s.h_check, clamped);
  return combine(primary, check, s, clamped);
}

QfiResult global_qfi_fd(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param param) {
  return global_qfi(propagate_shifted(spec, n_probes, angles, param));
}

double bures_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw InvalidArgument("Bures distance needs states of equal dimension");
  if (std::abs(a.norm() - 1.0) > 1e-6 || std::abs(b.norm() - 1.0) > 1e-6) {
    throw InvalidArgument("Bures distance needs normalized states");
  }
  const double overlap = std::min(1.0, std::abs(a.dot(b)));
  return std::sqrt(2.0) * std::sqrt(1.0 - overlap);
}

double bures_distance(const SymmetricState& a, const SymmetricState& b) {
  return bures_distance(a.amplitudes(), b.amplitudes());
}

BusDensity reduce_to_bus(const SymmetricState& state) {
  const auto& c = state.amplitudes();
  Op2 rho = Op2::Zero();
  for (int k = 0; k <= state.n_probes(); ++k) {
    const cplx c0 = c[SymmetricState::index(k, 0)];
    const cplx c1 = c[SymmetricState::index(k, 1)];
    rho(0, 0) += std::norm(c0);
    rho(1, 1) += std::norm(c1);
    rho(0, 1) += c0 * std::conj(c1);
  }
  rho(1, 0) = std::conj(rho(0, 1));
  rho /= rho.trace().real();
  return BusDensity(rho);
}

Op2 reduce_difference_to_bus(const SymmetricState& a, const Eigen::VectorXcd& d) {
  if (d.size() != a.dim()) throw InvalidArgument("state difference has the wrong dimension");
  const auto& c = a.amplitudes();
  Op2 out = Op2::Zero();
  for (int k = 0; k <= a.n_probes(); ++k) {
    const Eigen::Index i0 = SymmetricState::index(k, 0), i1 = SymmetricState::index(k, 1);
    for (int s = 0; s < 2; ++s) {
      for (int u = 0; u < 2; ++u) {
        const Eigen::Index is = s == 0 ? i0 : i1, iu = u == 0 ? i0 : i1;
        out(s, u) += d[is] * std::conj(c[iu]) + c[is] * std::conj(d[iu]) + d[is] * std::conj(d[iu]);
      }
    }
  }
  return out;
}

double qubit_qfi(const BusDensity& minus, const BusDensity& center, const BusDensity& plus, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  return qubit_qfi(center, (plus.bloch() - minus.bloch()) / (2.0 * h), h);
}

double qubit_qfi(const BusDensity& center, const Eigen::Vector3d& dr, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  const Eigen::Vector3d r = center.bloch();
  const double rn = r.norm();
  if (rn > 1.0 + 1e-9) throw InvalidArgument("invalid density: Bloch vector longer than 1");
  const double tangential = r.dot(dr);
  if (1.0 - rn < 1e-9) {
    // Pure boundary. The finite-difference noise floor on r.dr is ~eps/h.
    const double tol = 1e-9 * dr.norm() + 16.0 * kMachineEps / h;
    if (std::abs(tangential) > tol) {
      throw SingularityError("parameter derivative leaves the qubit state space at a pure state (r.dr = " +
                             std::to_string(tangential) + ")");
    }
    return dr.squaredNorm();
  }
  return dr.squaredNorm() + tangential * tangential / (1.0 - rn * rn);
}

QfiResult local_qfi(const ShiftedStates& s) {
  const BusDensity c = reduce_to_bus(s.center);
  const auto dr = [](const Op2& d, double h) -> Eigen::Vector3d {
    return Eigen::Vector3d(2.0 * d(0, 1).real(), -2.0 * d(0, 1).imag(), (d(0, 0) - d(1, 1)).real()) / (2.0 * h);
  };
  const double primary =
      qubit_qfi(c, dr(reduce_difference_to_bus(s.minus_primary, s.diff_primary), s.h_primary), s.h_primary);
  const double check = qubit_qfi(c, dr(reduce_difference_to_bus(s.minus_check, s.diff_check), s.h_check), s.h_check);
  return combine(primary, check, s, false);
}

QfiResult local_qfi_fd(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param param) {
  return local_qfi(propagate_shifted(spec, n_probes, angles, param));
}

std::optional<double> qcr_bound(double qfi, int measurements) {
  if (measurements < 1) throw InvalidArgument("number of measurements must be >= 1");
  if (!(qfi >= 0.0)) throw InvalidArgument("Fisher information must be >= 0");
  if (qfi == 0.0) return std::nullopt;
  return 1.0 / (measurements * qfi);
}

FirstMomentResult first_moment_uncertainty(const ShiftedStates& s, const Op2& a, int measurements) {
  if (measurements < 1) throw InvalidArgument("number of measurements must be >= 1");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("observable must be Hermitian");
  const auto mean_change = [&](const SymmetricState& minus, const Eigen::VectorXcd& diff) {
    return (reduce_difference_to_bus(minus, diff) * a).trace().real();
  };

  FirstMomentResult r;
  const Op2 rho = reduce_to_bus(s.center).matrix();
  r.mean = (rho * a).trace().real();
  r.variance = std::max(0.0, (rho * a * a).trace().real() - r.mean * r.mean);
  r.derivative = mean_change(s.minus_primary, s.diff_primary) / (2.0 * s.h_primary);
  r.derivative_check = mean_change(s.minus_check, s.diff_check) / (2.0 * s.h_check);
  r.relative_discrepancy = discrepancy(r.derivative, r.derivative_check);

  // Below 1e-14 ||A|| the mean is treated as parameter independent.
  const double floor = 1e-14 * a.cwiseAbs().maxCoeff();
  const double sd = std::sqrt(r.variance);
  if (std::abs(r.derivative) <= floor && std::abs(r.derivative_check) <= floor) {
    r.signal = Signal::insensitive;
    r.uncertainty = std::numeric_limits<double>::infinity();
    r.inverse_squared = 0.0;
    return r;
  }
  r.ill_conditioned = r.relative_discrepancy > kFdDiscrepancyTolerance;
  r.inverse_squared = measurements * r.derivative * r.derivative / r.variance;
  r.uncertainty = sd / (std::sqrt(double(measurements)) * std::abs(r.derivative));
  return r;
}

FirstMomentResult first_moment_uncertainty(const ModelSpec& spec, int n_probes, const StateAngles& angles,
                                           Param param, const Op2& observable, int measurements) {
  return first_moment_uncertainty(propagate_shifted(spec, n_probes, angles, param), observable, measurements);
}

}  // namespace cohav
