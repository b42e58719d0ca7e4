#pragma once

#include <functional>
#include <vector>

namespace hqc::quad {

/// Gauss-Legendre nodes and weights mapped onto [a, b].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule gauss_legendre(int n, double a, double b);

/// Concatenation of `n`-point Gauss-Legendre rules on each consecutive
/// pair of `breaks`. Use breaks at kinks of the integrand.
Rule composite_gauss_legendre(int n, const std::vector<double>& breaks);

struct AdaptiveResult {
  double value;
  double abs_error;
};

/// Adaptive Gauss-Kronrod integration of a smooth function on [a, b].
/// Throws Error(convergence) when the requested tolerance is not reached.
AdaptiveResult integrate(const std::function<double(double)>& f, double a,
                         double b, double abs_tol = 1e-12,
                         double rel_tol = 1e-10);

}  // namespace hqc::quad
