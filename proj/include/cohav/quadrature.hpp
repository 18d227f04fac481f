#pragma once

// Gauss-Legendre rules and tensor-product integration over [0,t] and [0,t]^2.

#include <functional>
#include <vector>

namespace cohav {

struct QuadratureRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // positive, summing to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
/// Throws InvalidArgument for n < 1.
QuadratureRule gauss_legendre(int n);

/// The rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

double integrate(const std::function<double(double)>& f, double a, double b, int order);

}  // namespace cohav
