#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "swdrag/assembly.hpp"
#include "swdrag/fe_space.hpp"
#include "swdrag/mesh.hpp"

namespace swdrag::oracle {

inline constexpr double pi = 3.14159265358979323846;

/// Cell containing x (first match) together with its reference coordinates.
struct Located {
  std::size_t cell;
  Point xhat;
};

inline Located locate(const FunctionSpacePair& space, const Point& x) {
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    Point r = space.cell_map(c).to_reference(x);
    if (r.x() >= -1e-13 && r.y() >= -1e-13 && r.x() + r.y() <= 1 + 1e-13) {
      r = r.cwiseMax(0.0);
      if (r.sum() > 1.0) r /= r.sum();
      return {c, r};
    }
  }
  throw std::out_of_range("point outside the mesh");
}

/// Value of global velocity basis function `dof` at x (zero away from its support).
inline Point global_basis(const FunctionSpacePair& space, std::size_t dof, const Point& x) {
  const Located l = locate(space, x);
  const auto dofs = space.velocity_cell_dofs(l.cell);
  const VelocityValues v = space.eval_velocity_basis(l.cell, l.xhat);
  for (std::size_t i = 0; i < dofs.size(); ++i)
    if (dofs[i].index == dof) return v.col(static_cast<Eigen::Index>(i));
  return Point::Zero();
}

/// Adaptive 1-D integral on [0, 1].
template <class F>
double integrate01(F f) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 10, 1e-15);
}

/// Fixed 30-point Gauss-Legendre on [0, 1].
template <class F>
double gauss01(F f) {
  return 0.5 * boost::math::quadrature::gauss<double, 30>::integrate(
                   [&](double z) { return f(0.5 * (z + 1.0)); }, -1.0, 1.0);
}

/// Integral over a physical triangle through the collapsed square.
template <class F>
double integrate_triangle(const Point& a, const Point& b, const Point& c, F f) {
  const double det = std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  return det * gauss01([&](double s) {
    return gauss01([&](double r) {
      const double x = s, y = r * (1.0 - s);
      return (1.0 - s) * f(a + x * (b - a) + y * (c - a));
    });
  });
}

/// Manufactured fields written out independently of the library.
inline Point mms_u(const Point& x, double t = 0.0) {
  return std::cos(pi * t) * Point(std::sin(pi * x.x()) * std::cos(pi * x.y()),
                                  std::cos(pi * x.x()) * std::sin(pi * x.y()));
}
inline double mms_div(const Point& x, double t = 0.0) {
  return 2.0 * pi * std::cos(pi * t) * std::cos(pi * x.x()) * std::cos(pi * x.y());
}
inline double mms_eta(const Point& x, double t = 0.0) {
  return std::sin(pi * x.x()) * std::sin(2.0 * pi * x.y()) * std::cos(pi * t);
}

}  // namespace swdrag::oracle

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace swdrag::oracle {

/// Degree-5 seven-point rule on a physical triangle.
struct PointWeight {
  Point x;
  double w;
};

inline std::vector<PointWeight> seven_point_rule(const Point& a, const Point& b, const Point& c) {
  const double area = 0.5 * std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  const double r = std::sqrt(15.0);
  const double a1 = (9.0 - 2.0 * r) / 21.0, b1 = (6.0 + r) / 21.0, w1 = (155.0 + r) / 1200.0;
  const double a2 = (9.0 + 2.0 * r) / 21.0, b2 = (6.0 - r) / 21.0, w2 = (155.0 - r) / 1200.0;
  std::vector<PointWeight> rule;
  auto add = [&](double l0, double l1, double l2, double w) {
    rule.push_back({l0 * a + l1 * b + l2 * c, w * area});
  };
  add(1.0 / 3, 1.0 / 3, 1.0 / 3, 9.0 / 40.0);
  add(a1, b1, b1, w1);
  add(b1, a1, b1, w1);
  add(b1, b1, a1, w1);
  add(a2, b2, b2, w2);
  add(b2, a2, b2, w2);
  add(b2, b2, a2, w2);
  return rule;
}

/// Local velocity basis of one cell built directly in physical coordinates:
/// monomial span of RT_k, made dual to the global DOF functionals.
class OracleBasis {
 public:
  OracleBasis(const Mesh& mesh, std::size_t cell, int k, const std::vector<std::size_t>& global_dofs)
      : k_(k), n_(k == 1 ? 3 : 8) {
    const auto& v = mesh.cell(cell);
    p_ = {mesh.vertex(v[0]), mesh.vertex(v[1]), mesh.vertex(v[2])};
    jac_.col(0) = p_[1] - p_[0];
    jac_.col(1) = p_[2] - p_[0];
    area_ = 0.5 * std::abs(jac_.determinant());
    // Functional of each local slot, identified through the global DOF index.
    Eigen::MatrixXd dual(n_, n_);
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) dual(i, j) = functional(mesh, cell, global_dofs[i], j);
    }
    coeffs_ = dual.inverse();  // column i: monomial coefficients of basis function i
  }

  int size() const { return n_; }

  Point value(int i, const Point& x) const {
    Point s = Point::Zero();
    for (int j = 0; j < n_; ++j) s += coeffs_(j, i) * monomial(j, x);
    return s;
  }

  double divergence(int i, const Point& x) const {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += coeffs_(j, i) * monomial_div(j, x);
    return s;
  }

 private:
  Point monomial(int j, const Point& x) const {
    if (k_ == 1) {
      switch (j) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        default: return x;
      }
    }
    switch (j) {
      case 0: return {1, 0};
      case 1: return {x.x(), 0};
      case 2: return {x.y(), 0};
      case 3: return {0, 1};
      case 4: return {0, x.x()};
      case 5: return {0, x.y()};
      case 6: return {x.x() * x.x(), x.x() * x.y()};
      default: return {x.x() * x.y(), x.y() * x.y()};
    }
  }

  double monomial_div(int j, const Point& x) const {
    if (k_ == 1) return j == 2 ? 2.0 : 0.0;
    switch (j) {
      case 1: return 1.0;
      case 5: return 1.0;
      case 6: return 3.0 * x.x();
      case 7: return 3.0 * x.y();
      default: return 0.0;
    }
  }

  // Global DOF functional `dof` applied to monomial j, restricted to this cell.
  double functional(const Mesh& mesh, std::size_t cell, std::size_t dof, int j) const {
    const std::size_t edge_dofs = mesh.num_edges() * static_cast<std::size_t>(k_);
    if (dof < edge_dofs) {
      const std::size_t e = dof / k_;
      const int m = static_cast<int>(dof % k_);
      const Point a = mesh.vertex(mesh.edge(e)[0]);
      const Point t = mesh.vertex(mesh.edge(e)[1]) - a;
      const Point n(t.y(), -t.x());
      return integrate01([&](double s) { return (m == 0 ? 1.0 : 2 * s - 1) * monomial(j, a + s * t).dot(n); });
    }
    const int comp = static_cast<int>((dof - edge_dofs) % 2);
    (void)cell;
    const Eigen::Matrix2d jinv = jac_.inverse();
    double s = 0.0;
    for (const auto& q : seven_point_rule(p_[0], p_[1], p_[2])) s += q.w * (jinv * monomial(j, q.x))[comp];
    return s;
  }

  int k_;
  int n_;
  std::array<Point, 3> p_;
  Eigen::Matrix2d jac_;
  double area_ = 0.0;
  Eigen::MatrixXd coeffs_;
};

inline std::vector<std::size_t> indices(std::span<const DofRef> dofs) {
  std::vector<std::size_t> out;
  for (const auto& d : dofs) out.push_back(d.index);
  return out;
}

inline double barycentric(const Mesh& m, std::size_t c, int a, const Point& x) {
  const auto& v = m.cell(c);
  const Point p0 = m.vertex(v[a]), p1 = m.vertex(v[(a + 1) % 3]), p2 = m.vertex(v[(a + 2) % 3]);
  auto cross = [](const Point& u, const Point& w) { return u.x() * w.y() - u.y() * w.x(); };
  return cross(p1 - x, p2 - x) / cross(p1 - p0, p2 - p0);
}

inline double oracle_pressure(const Mesh& m, int k, std::size_t c, int a, const Point& x) {
  return k == 1 ? 1.0 : barycentric(m, c, a, x);
}

struct OracleOperators {
  Eigen::MatrixXd mass, divergence, coriolis, pressure_mass;
};

// Dense operators by brute force: independent basis, seven-point rule per cell.
inline OracleOperators brute_force(const FunctionSpacePair& s, double depth, double f, double eps) {
  const Mesh& m = s.mesh();
  const int k = s.order();
  const auto nu = static_cast<Eigen::Index>(s.num_velocity_dofs());
  const auto np = static_cast<Eigen::Index>(s.num_pressure_dofs());
  OracleOperators o{Eigen::MatrixXd::Zero(nu, nu), Eigen::MatrixXd::Zero(np, nu),
                    Eigen::MatrixXd::Zero(nu, nu), Eigen::MatrixXd::Zero(np, np)};
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const auto vd = indices(s.velocity_cell_dofs(c));
    const auto pd = s.pressure_cell_dofs(c);
    const OracleBasis basis(m, c, k, vd);
    const auto& v = m.cell(c);
    for (const auto& q : seven_point_rule(m.vertex(v[0]), m.vertex(v[1]), m.vertex(v[2]))) {
      for (int i = 0; i < basis.size(); ++i) {
        const Point pi = basis.value(i, q.x);
        for (int j = 0; j < basis.size(); ++j) {
          const Point pj = basis.value(j, q.x);
          o.mass(vd[i], vd[j]) += q.w * pj.dot(pi) / depth;
          o.coriolis(vd[i], vd[j]) += q.w * f / (depth * eps) * Point(-pj.y(), pj.x()).dot(pi);
        }
      }
      for (std::size_t a = 0; a < pd.size(); ++a) {
        const double wa = oracle_pressure(m, k, c, static_cast<int>(a), q.x);
        for (int j = 0; j < basis.size(); ++j) o.divergence(pd[a], vd[j]) += q.w * wa * basis.divergence(j, q.x);
        for (std::size_t b = 0; b < pd.size(); ++b)
          o.pressure_mass(pd[a], pd[b]) += q.w * wa * oracle_pressure(m, k, c, static_cast<int>(b), q.x);
      }
    }
  }
  return o;
}

}  // namespace swdrag::oracle
