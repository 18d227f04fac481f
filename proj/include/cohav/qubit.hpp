#pragma once

// Single-qubit (2x2) algebra shared by the perturbative and closed-form code.

#include <complex>

#include <Eigen/Dense>

namespace cohav {

using cplx = std::complex<double>;
using Op2 = Eigen::Matrix2cd;
using Ket2 = Eigen::Vector2cd;

inline const cplx I_UNIT{0.0, 1.0};

inline Op2 identity2() { return Op2::Identity(); }

inline Op2 pauli_x() {
  Op2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Op2 pauli_y() {
  Op2 m;
  m << 0.0, -I_UNIT, I_UNIT, 0.0;
  return m;
}

inline Op2 pauli_z() {
  Op2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// cos(angle)|0> + sin(angle) e^{i phase}|1>
inline Ket2 qubit_ket(double angle, double phase) {
  return Ket2(std::cos(angle), std::sin(angle) * std::exp(I_UNIT * phase));
}

inline cplx expect(const Op2& op, const Ket2& ket) { return ket.dot(op * ket); }

inline Op2 commutator(const Op2& a, const Op2& b) { return a * b - b * a; }

/// e^{i a Z/2} op e^{-i a Z/2}: Heisenberg picture under a Z/2 generator.
inline Op2 rotate_about_z(const Op2& op, double a) {
  const cplx u0 = std::exp(I_UNIT * (a / 2.0));
  Op2 out = op;
  out(0, 1) *= u0 * u0;
  out(1, 0) *= std::conj(u0 * u0);
  return out;
}

/// Hermitian 2x2 from Pauli coefficients c0 I + cx X + cy Y + cz Z.
inline Op2 from_pauli(double c0, double cx, double cy, double cz) {
  return c0 * identity2() + cx * pauli_x() + cy * pauli_y() + cz * pauli_z();
}

}  // namespace cohav
