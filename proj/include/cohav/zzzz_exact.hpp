#pragma once

// Closed forms for the ZZZZ (dephasing) model.

#include "cohav/dynamics.hpp"
#include "cohav/errors.hpp"
#include "cohav/fisher.hpp"
#include "cohav/symstate.hpp"

namespace cohav {

/// Global QFI of the pure product state:
///   I_x      = N^2 t^2 eps^2 cos^2(2a) sin^2(2b) + N t^2 eps^2 sin^2(2a)
///   I_omega1 = N delta^2 t^2 sin^2(2a)
///   I_omega0 = delta^2 t^2 sin^2(2b)
double global_qfi_closed(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param sel);

/// rho_00 = cos^2 b, rho_11 = sin^2 b,
/// rho_01 = sin(2b)/2 e^{-i(varphi + delta omega0 t)} F^N,
/// F = cos^2(a) e^{-i eps x t} + sin^2(a) e^{i eps x t}.
BusDensity reduced_rho_closed(const ModelSpec& spec, int n_probes, const StateAngles& angles);

/// A value that may lie below the double range. log10_value is always set
/// (-inf for an exact zero); value is 0 with signal = underflow when the
/// number is not representable.
struct LogScalar {
  double value = 0.0;
  double log10_value = 0.0;
  Signal signal = Signal::none;
};

/// Local QFI for x from reduced_rho_closed:
///   s N^2 |F|^{2N-2} [ |F'|^2 + |F|^{2N-2} Re(F conj F')^2 / (1 - |F|^{2N}) ]
/// with s = sin^2(2b), F' = dF/dx.
LogScalar local_qfi_x_closed(const ModelSpec& spec, int n_probes, const StateAngles& angles);

enum class X0Variant { exact_statebad, pert_statebad, pert_general };

struct Uncertainty {
  double uncertainty = 0.0;      // delta_x
  double inverse_squared = 0.0;  // delta_x^-2
  double log10_inverse_squared = 0.0;
  Signal signal = Signal::none;
};

/// Uncertainty of x from a measurement of X on the bus.
///   exact_statebad: N^2 t^2 eps^2 tan^2(eps t x) / (cos(eps t x)^{-2N} cos(delta omega0 t)^{-2} - 1)
///   pert_statebad:  N^2 t^4 eps^4 x^2 / (N t^2 x^2 eps^2 + tan^2(delta omega0 t))
///   pert_general:   binomial sums over m with weight C(N, m + N/2)
/// The statebad variants require angles (pi/4, 0, pi/4, 0).
Uncertainty delta_x_X0(const ModelSpec& spec, int n_probes, const StateAngles& angles, X0Variant variant);

/// Probes in diag(e^{-b w1}, e^{b w1})/Z, pure bus cos(b)|0> + sin(b) e^{i varphi}|1>:
///   I_x      = sin^2(2b) eps^2 t^2 (N^2 tanh^2(b_th w1) + N (1 - tanh^2(b_th w1)))
///   I_omega1 = N b_th^2 (1 - tanh^2(b_th w1))
///   I_omega0 = delta^2 t^2 sin^2(2b)
/// omega1 is spec.omega1.
double thermal_global_qfi(const ModelSpec& spec, int n_probes, double beta_th, double bus_beta, Param sel);

/// Bus density for thermal probes, summed over probe configurations.
BusDensity thermal_reduced_rho(const ModelSpec& spec, int n_probes, double beta_th, double bus_beta,
                               double bus_varphi);

struct EquivalenceReport {
  bool pass = false;
  double max_deviation = 0.0;
};

/// Compares thermal_reduced_rho with reduced_rho_closed at
/// alpha = thermal_equivalent_alpha; passes below 1e-10.
EquivalenceReport thermal_local_equivalence_check(const ModelSpec& spec, int n_probes, double beta_th,
                                                  double bus_beta, double bus_varphi);

}  // namespace cohav
