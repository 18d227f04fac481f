#pragma once

// States of N identical probes plus one bus qubit, restricted to the
// exchange-symmetric sector of the probes.
//
// Basis |m, s>: m is the probes' total J_z projection (j = N/2), s the bus
// level. Index layout is row-major over m descending from N/2, with s inner:
//   index(k, s) = 2k + s,  m = N/2 - k,  k = number of probes in |1>.
// This layout is also the order of the text serialization.

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace cohav {

/// Pure product state angles:
///   probes: cos(alpha)|0> + sin(alpha) e^{i phi}|1>
///   bus:    cos(beta)|0>  + sin(beta)  e^{i varphi}|1>
struct StateAngles {
  double alpha = 0.0;
  double phi = 0.0;
  double beta = 0.0;
  double varphi = 0.0;

  bool finite() const;
};

/// Probes in the state diag(e^{-beta_th omega1}, e^{beta_th omega1}) / Z.
struct ThermalProbeSpec {
  double beta_th = 0.0;
  double omega1 = 1.0;
};

class SymmetricState {
 public:
  /// Throws InvalidArgument on wrong length or a norm off by more than 1e-10.
  SymmetricState(int n_probes, Eigen::VectorXcd amplitudes);

  int n_probes() const { return n_probes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  static Eigen::Index index(int k, int s) { return 2 * Eigen::Index(k) + s; }
  double m_of(int k) const { return 0.5 * n_probes_ - k; }

  /// Amplitude at (m, s); m must be one of -N/2, ..., N/2.
  std::complex<double> amplitude(double m, int s) const;

  double norm() const { return amplitudes_.norm(); }

 private:
  int n_probes_;
  Eigen::VectorXcd amplitudes_;
};

SymmetricState build_product_state(int n_probes, const StateAngles& angles);

/// J_z = sum_i Z_i / 2 in the |j, m> basis (dimension N+1, m descending).
Eigen::MatrixXd collective_jz(int n_probes);
/// J_x = sum_i X_i / 2, real symmetric tridiagonal.
Eigen::MatrixXd collective_jx(int n_probes);
/// J_y = -i [J_z, J_x].
Eigen::MatrixXcd collective_jy(int n_probes);

/// Super-diagonal element <m+1|J_x|m> for m = N/2 - k - 1, i.e. between
/// index k+1 and k. Equals sqrt((k+1)(N-k)) / 2.
double jx_element(int n_probes, int k);

/// Angle alpha whose pure product state reproduces the thermal probes'
/// reduced bus dynamics: cos^2(alpha) = e^{-beta_th omega1} / Z.
double thermal_equivalent_alpha(const ThermalProbeSpec& spec);

/// Natural log of the binomial coefficient C(n, k) via lgamma.
double log_binomial(int n, int k);

std::string to_text(const SymmetricState& state);
SymmetricState state_from_text(std::string_view text);

}  // namespace cohav
