#pragma once

// Brute-force reference model on the full 2^{N+1}-dimensional Hilbert space.
//
// Nothing here uses the symmetric-sector machinery: Hamiltonians act as
// Pauli strings on bit patterns, propagation is a Taylor series, states are
// explicit tensor products. Intended for N <= 10.
//
// Basis index = (probe bits) * 2 + bus bit, probe 1 is the most significant
// bit; bit value 0 is |0> (Z = +1).

#include <functional>

#include <Eigen/Dense>

#include "cohav/dynamics.hpp"
#include "cohav/qubit.hpp"
#include "cohav/symstate.hpp"

namespace cohav::oracle {

Eigen::VectorXcd product_state(int n_probes, const StateAngles& angles);

Eigen::VectorXcd apply_hamiltonian(const ModelSpec& spec, int n_probes, const Eigen::VectorXcd& psi);
Eigen::MatrixXcd hamiltonian(const ModelSpec& spec, int n_probes);

/// exp(-i H t) psi by a step-split Taylor series.
Eigen::VectorXcd propagate(const ModelSpec& spec, int n_probes, const Eigen::VectorXcd& psi, double t);

/// Columns are the normalized Dicke states |k> (x) |s> in symmetric index order.
Eigen::MatrixXcd symmetric_isometry(int n_probes);
/// Amplitudes of psi in the symmetric basis (psi assumed symmetric).
Eigen::VectorXcd project_symmetric(int n_probes, const Eigen::VectorXcd& psi);

/// Bus reduced density matrix by explicit partial trace over probe bits.
Op2 bus_density(const Eigen::VectorXcd& psi);

/// 4(<d psi|d psi> - |<psi|d psi>|^2) with a central difference of step h.
double pure_qfi_fd(const ModelSpec& spec, int n_probes, const StateAngles& angles, Param p, double h);

/// QFI of a mixed state family from the symmetric logarithmic derivative in
/// the eigenbasis of rho(theta): 2 sum |<n|d rho|m>|^2 / (p_n + p_m).
double mixed_qfi_fd(const std::function<Eigen::MatrixXcd(double)>& rho_of_theta, double theta, double h);

/// Evolved density matrix for thermal probes (weights e^{-/+ beta_th omega1}/Z
/// on |0>/|1>) and a pure bus, as an explicit mixture over all 2^N probe
/// configurations.
Eigen::MatrixXcd thermal_density(const ModelSpec& spec, int n_probes, double beta_th, double bus_beta,
                                 double bus_varphi);

/// Bus density of thermal_density, partial trace taken explicitly.
Op2 thermal_bus_density(const ModelSpec& spec, int n_probes, double beta_th, double bus_beta, double bus_varphi);

}  // namespace cohav::oracle
