#pragma once

// Model Hamiltonians in the symmetric sector and exact propagation.
//
//   H = delta (omega1 J_z (x) 1 + omega0/2 1 (x) Z) + epsilon x (K (x) B)
//
// with (K, B) = (J_z, Z) for ZZZZ, (J_x, X) for ZZXX, (J_z, X) for ZZZX.
// All three Hamiltonians are real symmetric in the (m, s) basis.

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cohav/qubit.hpp"
#include "cohav/symstate.hpp"

namespace cohav {

enum class ModelKind { zzzz, zzxx, zzzx };

std::string_view to_string(ModelKind kind);
/// Accepts "zzzz", "zzxx", "zzzx" (case-insensitive); throws InvalidArgument.
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::zzxx;
  double delta = 1.0;
  double epsilon = 1.0;
  double omega0 = 1.0;
  double omega1 = 1.0;
  double x = 1.0;
  double t = 1.0;

  /// Throws InvalidArgument unless every field is finite and t >= 0.
  void validate() const;
};

/// The three estimation targets.
enum class Param { x, omega0, omega1 };

std::string_view to_string(Param p);
/// Accepts "x", "omega0"/"w0", "omega1"/"w1"; throws InvalidArgument.
Param parse_param(std::string_view name);

inline double parameter_value(const ModelSpec& spec, Param p) {
  switch (p) {
    case Param::x: return spec.x;
    case Param::omega0: return spec.omega0;
    case Param::omega1: return spec.omega1;
  }
  return spec.x;
}

inline ModelSpec with_parameter(ModelSpec spec, Param p, double value) {
  switch (p) {
    case Param::x: spec.x = value; break;
    case Param::omega0: spec.omega0 = value; break;
    case Param::omega1: spec.omega1 = value; break;
  }
  return spec;
}

/// One probe-bus coupling channel: S_nu(x) = (x/2) probe, R_nu = bus.
struct Channel {
  Op2 probe;
  Op2 bus;
};

/// The interaction channels of a model. All built-in models have one.
std::vector<Channel> interaction_channels(ModelKind kind);

struct HamiltonianMatrix {
  int n_probes = 0;
  ModelKind kind = ModelKind::zzzz;
  Eigen::MatrixXd matrix;
};

HamiltonianMatrix assemble(const ModelSpec& spec, int n_probes);

/// d = dim: derivative of H with respect to x (epsilon K (x) B).
Eigen::MatrixXd assemble_x_derivative(const ModelSpec& spec, int n_probes);

/// dH/dtheta. H is linear in each of x, omega0, omega1.
Eigen::MatrixXd assemble_derivative(const ModelSpec& spec, int n_probes, Param p);

/// Spectral decomposition of a real symmetric matrix. The matrix is split
/// into the connected components of its sparsity graph; components that
/// are simple paths are solved as tridiagonal problems.
class Eigensystem {
 public:
  struct Block {
    std::vector<Eigen::Index> index;  // basis indices of this component
    Eigen::VectorXd values;           // ascending
    Eigen::MatrixXd vectors;          // columns in block-local coordinates
  };

  Eigensystem(Eigen::Index dim, std::vector<Block> blocks);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// All eigenvalues, ascending.
  Eigen::VectorXd values() const;
  /// Orthogonal eigenvector matrix, columns ordered like values().
  Eigen::MatrixXd vectors() const;

  /// exp(-i H t) psi.
  Eigen::VectorXcd propagate(const Eigen::VectorXcd& psi, double t) const;

 private:
  Eigen::Index dim_;
  std::vector<Block> blocks_;
};

Eigensystem eigensystem(const HamiltonianMatrix& h);

/// exp(-i H_b t) psi - exp(-i H_a t) psi for H_b - H_a = delta_h, from
///   -i int_0^t exp(-i H_b (t-s)) delta_h exp(-i H_a s) psi ds
/// evaluated in the two eigenbases. Free of the cancellation that a direct
/// subtraction suffers when H_b is close to H_a.
Eigen::VectorXcd propagation_difference(const Eigensystem& a, const Eigensystem& b, const Eigen::MatrixXd& delta_h,
                                        double t, const Eigen::VectorXcd& psi);
Eigensystem eigensystem(const Eigen::MatrixXd& symmetric);

struct HermitianEigensystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // unitary
};

/// Dense complex Hermitian eigensolver (general fallback, not used by the
/// built-in models).
HermitianEigensystem eigensystem(const Eigen::MatrixXcd& hermitian);

/// exp(-i H t) psi0. t = 0 returns psi0 unchanged; diagonal (ZZZZ)
/// Hamiltonians take an elementwise phase fast path.
SymmetricState evolve(const HamiltonianMatrix& h, double t, const SymmetricState& psi0);
SymmetricState evolve(const Eigensystem& es, double t, const SymmetricState& psi0);

/// Convenience: assemble, then evolve the product state for spec.t.
SymmetricState propagate_product_state(const ModelSpec& spec, int n_probes, const StateAngles& angles);

}  // namespace cohav
