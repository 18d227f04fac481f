#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "cohav/dynamics.hpp"
#include "cohav/symstate.hpp"

namespace cohav::testing {

inline constexpr double pi = std::numbers::pi;

// Angles used for all figure reproductions.
inline StateAngles figure_angles() { return {pi / 3, 3 * pi / 8, pi / 6, 5 * pi / 8}; }
// |0>^N (x) (|0> + |1>)/sqrt2
inline StateAngles favorable_angles() { return {0.0, 0.0, pi / 4, 0.0}; }
// (|0> + |1>)^N (x) (|0> + |1>) / 2^{(N+1)/2}
inline StateAngles worst_angles() { return {pi / 4, 0.0, pi / 4, 0.0}; }

inline ModelSpec unit_spec(ModelKind kind) { return {kind, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}; }

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline StateAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * pi);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace cohav::testing
