#include "swdrag/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swdrag {

LineQuadrature LineQuadrature::gauss_legendre(int npoints) {
  if (npoints < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  LineQuadrature rule;
  rule.degree = 2 * npoints - 1;
  rule.points.resize(npoints);
  rule.weights.resize(npoints);
  const unsigned n = static_cast<unsigned>(npoints);
  for (unsigned i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess; roots on [-1, 1].
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double pm = n > 0 ? std::legendre(n - 1, x) : 0.0;
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      const double p = std::legendre(n, x);
      const double pm = std::legendre(n - 1, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

LineQuadrature LineQuadrature::of_degree(int degree) {
  return gauss_legendre(std::max(1, (degree + 2) / 2));
}

TriangleQuadrature TriangleQuadrature::of_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("TriangleQuadrature: negative degree");
  // The collapse x = a, y = b (1 - a) adds one power of (1 - a) to the integrand.
  const LineQuadrature outer = LineQuadrature::of_degree(degree + 1);
  const LineQuadrature inner = LineQuadrature::of_degree(degree);
  TriangleQuadrature rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double a = outer.points[i];
    for (std::size_t j = 0; j < inner.size(); ++j) {
      const double x = a;
      const double y = inner.points[j] * (1.0 - a);
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(outer.weights[i] * inner.weights[j] * (1.0 - a));
    }
  }
  return rule;
}

}  // namespace swdrag
