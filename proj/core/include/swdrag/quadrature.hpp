#pragma once

#include <array>
#include <vector>

namespace swdrag {

/// Gauss-Legendre rule on [0, 1].
struct LineQuadrature {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;

  static LineQuadrature gauss_legendre(int npoints);
  /// Smallest Gauss-Legendre rule exact for polynomials of the given degree.
  static LineQuadrature of_degree(int degree);
  std::size_t size() const { return points.size(); }
};

/// Rule on the reference triangle {(0,0), (1,0), (0,1)}. Points are stored as
/// barycentric triples (1 - x - y, x, y); weights sum to the reference area 1/2.
struct TriangleQuadrature {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  /// Collapsed (conical product) Gauss rule exact for total degree `degree`.
  static TriangleQuadrature of_degree(int degree);
  std::size_t size() const { return points.size(); }

  double x(std::size_t q) const { return points[q][1]; }
  double y(std::size_t q) const { return points[q][2]; }
};

}  // namespace swdrag
