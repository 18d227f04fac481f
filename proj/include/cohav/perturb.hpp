#pragma once

// Perturbative QFIs and observable uncertainties.
//
// The Hamiltonian is split as H = H_0 + H_int with
//   H_0   = delta (omega1 J_z + omega0/2 Z)
//   H_int = epsilon sum_i sum_nu S_{i,nu}(x) (x) R_nu,   S_nu(x) = (x/2) P_nu.
// PT1 treats the part that carries the estimated parameter to lowest order;
// PT2 keeps the zeroth order of the dominant part.
//
// Probe expectations are taken in |phi> = cos(alpha)|0> + sin(alpha) e^{i phi}|1>,
// bus expectations in |xi> = cos(beta)|0> + sin(beta) e^{i varphi}|1>.

#include <optional>

#include "cohav/dynamics.hpp"
#include "cohav/errors.hpp"
#include "cohav/qubit.hpp"
#include "cohav/symstate.hpp"

namespace cohav {

/// Model, estimated parameter and Gauss-Legendre nodes per time axis.
struct CorrelationKernel {
  ModelKind kind = ModelKind::zzxx;
  Param param = Param::x;
  int order = 64;
};

inline CorrelationKernel kernel_for(const ModelSpec& spec, Param p, int order = 64) { return {spec.kind, p, order}; }

/// Size of the expansion parameters at this point of the sweep.
struct PtRegime {
  double eps_n = 0.0;        // |epsilon| N
  double delta_n = 0.0;      // |delta| N
  double free_norm_t = 0.0;  // ||H_0|| t = |delta| (N |omega1| + |omega0|) t / 2
};

PtRegime pt_regime(const ModelSpec& spec, int n_probes);

/// value = linear_coefficient N + quadratic_coefficient N^2.
struct Pt1Result {
  double value = 0.0;
  double linear_coefficient = 0.0;
  double quadratic_coefficient = 0.0;
  PtRegime regime;
};

struct Pt2Result {
  double value = 0.0;
  PtRegime regime;
};

/// I_x = 4 eps^2 int int [N K_phi(S'_1, S'_2) <R_1 R_2>_xi + N^2 <S'_1><S'_2> K_xi(R_1, R_2)]
/// over [0,t]^2, with S'(t) = e^{i delta omega1 t Z/2} (P/2) e^{-i ...} and
/// R(t) = e^{i delta omega0 t Z/2} B e^{-i ...}.
Pt1Result pt1_qfi_x(const ModelSpec& spec, int n_probes, const StateAngles& angles, const CorrelationKernel& kernel);

/// I_omega1 = 4 delta^2 int int [N <xi|K_phi(G_1, G_2)|xi> + N^2 K_xi(g_1, g_2)]
/// with G(t) = e^{i H_int,1 t} (Z/2) e^{-i H_int,1 t} on probe (x) bus and
/// g(t) = <phi|G(t)|phi>. Throws UnsupportedModel if the bus operators do not
/// commute.
Pt1Result pt1_qfi_omega1(const ModelSpec& spec, int n_probes, const StateAngles& angles,
                         const CorrelationKernel& kernel);

/// 4 t^2 Var_{psi_0}(dH/dtheta), for theta = x (dominant part eps H_int) or
/// omega1 (dominant part delta H_0). omega0 throws UnsupportedModel.
Pt2Result pt2_qfi_zeroth(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param sel);

/// int int sum <S'_1><S'_2> K_xi(R_1, R_2) over [0,t]^2. HL scaling of I_x is
/// predicted iff |value| > kHlTolerance.
double hl_condition(const ModelSpec& spec, const StateAngles& angles, const CorrelationKernel& kernel);
inline constexpr double kHlTolerance = 1e-10;

struct AppendixResult {
  double uncertainty = 0.0;      // sqrt(Var) / (sqrt(M) |d<A>|)
  double inverse_squared = 0.0;  // uncertainty^-2, 0 when insensitive
  double mean = 0.0;             // <A> through eps^2
  double variance = 0.0;         // Var(A) through eps^2
  double derivative = 0.0;       // d<A>/dtheta
  bool variance_clamped = false; // truncated variance came out negative
  Signal signal = Signal::none;
};

/// Second-order Dyson expansion of <A> and Var(A) for a bus observable A,
/// with A taken in the Heisenberg picture of H_0 at the final time. The
/// parameter derivative of the truncated mean is a central difference.
AppendixResult appendix_local_uncertainty(const ModelSpec& spec, int n_probes, const StateAngles& angles,
                                          const Op2& observable, Param sel, const CorrelationKernel& kernel,
                                          int measurements = 1);

}  // namespace cohav
