#pragma once

// Quantum Fisher information of the propagated probe+bus state (global) and
// of the reduced bus qubit (local), Bures distance, the quantum Cramer-Rao
// bound and first-moment (method of moments) uncertainties.
//
// Parameter derivatives are central finite differences evaluated twice, with
// steps h = 1e-8 max(1, |theta|) (reported value) and h = 1e-6 max(1, |theta|)
// (stability check).

#include <optional>

#include <Eigen/Dense>

#include "cohav/dynamics.hpp"
#include "cohav/errors.hpp"
#include "cohav/qubit.hpp"
#include "cohav/symstate.hpp"

namespace cohav {

inline constexpr double kFdStepPrimary = 1e-8;
inline constexpr double kFdStepCheck = 1e-6;
/// Relative disagreement between the two steps above which a result is
/// flagged ill-conditioned.
inline constexpr double kFdDiscrepancyTolerance = 1e-3;

/// Reduced state of the bus qubit. Hermitian, unit trace, positive.
class BusDensity {
 public:
  /// Validates the invariants (tolerance 1e-12); throws InvalidArgument.
  explicit BusDensity(const Op2& rho);

  const Op2& matrix() const { return rho_; }
  /// r with rho = (1 + r.sigma)/2.
  Eigen::Vector3d bloch() const;

 private:
  Op2 rho_;
};

struct QfiResult {
  double value = 0.0;
  double value_check = 0.0;
  double fd_step_primary = 0.0;
  double fd_step_check = 0.0;
  double relative_discrepancy = 0.0;
  bool clamped = false;          // a negative round-off value was set to 0
  bool ill_conditioned = false;  // relative_discrepancy > 1e-3
};

/// States at theta, theta +/- h_primary and theta +/- h_check. The
/// differences psi(theta + h) - psi(theta - h) are evaluated directly (see
/// propagation_difference) and are what the difference quotients use.
struct ShiftedStates {
  Param param;
  double theta;
  double h_primary;
  double h_check;
  SymmetricState center;
  SymmetricState plus_primary;
  SymmetricState minus_primary;
  SymmetricState plus_check;
  SymmetricState minus_check;
  Eigen::VectorXcd diff_primary;
  Eigen::VectorXcd diff_check;
};

ShiftedStates propagate_shifted(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param param);

QfiResult global_qfi(const ShiftedStates& states);
QfiResult global_qfi_fd(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param param);

/// Pure-state Bures distance sqrt(2) sqrt(1 - |<a|b>|). Inputs must be
/// normalized to 1e-6.
double bures_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
double bures_distance(const SymmetricState& a, const SymmetricState& b);

/// Partial trace over the probes: rho_{ss'} = sum_m c_{m,s} conj(c_{m,s'}).
BusDensity reduce_to_bus(const SymmetricState& state);

/// Qubit QFI from rho(theta - h), rho(theta), rho(theta + h):
///   |dr|^2 + (r.dr)^2 / (1 - |r|^2).
/// At the pure boundary the second term is dropped when the derivative is
/// tangent to the Bloch sphere, otherwise SingularityError is thrown.
double qubit_qfi(const BusDensity& minus, const BusDensity& center, const BusDensity& plus, double h);
/// Same with the Bloch-vector derivative given; h sets the noise floor of the
/// tangency test.
double qubit_qfi(const BusDensity& center, const Eigen::Vector3d& dr, double h);

/// Bus part of |a + d><a + d| - |a><a| (traceless, Hermitian).
Op2 reduce_difference_to_bus(const SymmetricState& a, const Eigen::VectorXcd& d);

QfiResult local_qfi(const ShiftedStates& states);
QfiResult local_qfi_fd(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param param);

/// 1 / (M I). Returns nullopt (unbounded variance) for I = 0.
std::optional<double> qcr_bound(double qfi, int measurements);

struct FirstMomentResult {
  double uncertainty = 0.0;      // sqrt(Var A) / (sqrt(M) |d<A>|)
  double inverse_squared = 0.0;  // uncertainty^-2, 0 when insensitive
  double mean = 0.0;
  double variance = 0.0;
  double derivative = 0.0;
  double derivative_check = 0.0;
  double relative_discrepancy = 0.0;
  bool ill_conditioned = false;
  Signal signal = Signal::none;
};

/// Uncertainty of theta estimated from the mean of the bus observable A.
FirstMomentResult first_moment_uncertainty(const ShiftedStates& states, const Op2& observable, int measurements = 1);
FirstMomentResult first_moment_uncertainty(const ModelSpec& spec, int n_probes, const StateAngles& angles,
                                           Param param, const Op2& observable, int measurements = 1);

}  // namespace cohav
