#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "swdrag/mesh.hpp"
#include "swdrag/quadrature.hpp"

namespace swdrag {

using VectorField = std::function<Point(const Point&)>;
using ScalarField = std::function<double(const Point&)>;

/// Up to eight local velocity basis functions (columns) at one point.
using VelocityValues = Eigen::Matrix<double, 2, Eigen::Dynamic, Eigen::ColMajor, 2, 8>;
/// Up to eight scalar values (divergences or pressure basis values).
using ScalarValues = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 8, 1>;

/// Global velocity degree of freedom touched by a cell, with the sign that
/// maps the cell's local (Piola-mapped reference) basis onto the global one.
struct DofRef {
  std::size_t index = 0;
  double sign = 1.0;
};

/// Affine map x = origin + jacobian * xhat from the reference triangle.
struct CellMap {
  Point origin;
  Eigen::Matrix2d jacobian;
  double det = 0.0;

  Point to_physical(const Point& xhat) const { return origin + jacobian * xhat; }
  Point to_reference(const Point& x) const { return jacobian.inverse() * (x - origin); }
};

/// Raviart-Thomas basis on the reference triangle.
///
/// Orders follow the exterior-calculus labelling: k = 1 is the lowest-order
/// space (one normal flux per edge), k = 2 the next-to-lowest (two edge
/// moments per edge plus two interior moments). Degrees of freedom are
/// integrated normal-flux moments against Legendre polynomials on each edge
/// and, for k = 2, the two Cartesian moments over the cell.
class RaviartThomasReference {
 public:
  explicit RaviartThomasReference(int k);

  int order() const { return k_; }
  int size() const { return ndofs_; }
  int dofs_per_edge() const { return k_; }
  int interior_dofs() const { return ndofs_ - 3 * k_; }

  VelocityValues values(const Point& xhat) const;
  ScalarValues divergences(const Point& xhat) const;

 private:
  int k_;
  int ndofs_;
  Eigen::MatrixXd coeffs_;  // monomial coefficients, one column per basis function
};

/// Velocity space RT_k paired with the discontinuous pressure space of
/// piecewise polynomials of degree k - 1.
///
/// Velocity numbering: edge moments first (k per edge, edge-major), then the
/// interior moments of each cell. Pressure numbering is cell-major; for k = 2
/// the local pressure basis is the linear nodal basis at the cell vertices.
class FunctionSpacePair {
 public:
  FunctionSpacePair(const Mesh& mesh, int k);

  const Mesh& mesh() const { return *mesh_; }
  int order() const { return k_; }

  std::size_t num_velocity_dofs() const { return nu_; }
  std::size_t num_pressure_dofs() const { return np_; }
  int velocity_dofs_per_cell() const { return ref_.size(); }
  int pressure_dofs_per_cell() const { return k_ == 1 ? 1 : 3; }

  std::span<const DofRef> velocity_cell_dofs(std::size_t cell) const;
  std::span<const std::size_t> pressure_cell_dofs(std::size_t cell) const;

  const std::vector<std::size_t>& boundary_velocity_dofs() const { return boundary_dofs_; }
  bool is_boundary_velocity_dof(std::size_t i) const { return boundary_mask_[i]; }
  /// Velocity DOFs left after eliminating the boundary ones, ascending.
  const std::vector<std::size_t>& free_velocity_dofs() const { return free_dofs_; }

  const CellMap& cell_map(std::size_t cell) const { return maps_.at(cell); }

  /// Physical basis values at the image of reference point `xhat`
  /// (contravariant Piola map, global signs applied).
  VelocityValues eval_velocity_basis(std::size_t cell, const Point& xhat) const;
  ScalarValues eval_velocity_div(std::size_t cell, const Point& xhat) const;
  ScalarValues eval_pressure_basis(std::size_t cell, const Point& xhat) const;

  Point eval_velocity(const Eigen::VectorXd& u, std::size_t cell, const Point& xhat) const;
  double eval_divergence(const Eigen::VectorXd& u, std::size_t cell, const Point& xhat) const;
  double eval_pressure(const Eigen::VectorXd& eta, std::size_t cell, const Point& xhat) const;

  /// Canonical H(div) interpolant: the DOF functionals applied to `u`.
  Eigen::VectorXd interpolate_hdiv(const VectorField& u) const;
  /// Cellwise L2 projection onto the pressure space.
  Eigen::VectorXd project_pressure(const ScalarField& eta) const;

  /// Assembly rule, exact to degree 2k + 2.
  const TriangleQuadrature& quadrature() const { return quad_; }

  /// Tabulated data at the assembly quadrature points of each cell.
  const VelocityValues& qp_basis(std::size_t cell, std::size_t q) const {
    return qp_basis_[cell * quad_.size() + q];
  }
  const ScalarValues& qp_div(std::size_t cell, std::size_t q) const {
    return qp_div_[cell * quad_.size() + q];
  }
  const ScalarValues& qp_pressure(std::size_t q) const { return qp_pressure_[q]; }
  /// Quadrature weight times |det J|.
  double qp_jxw(std::size_t cell, std::size_t q) const { return qp_jxw_[cell * quad_.size() + q]; }
  const Point& qp_point(std::size_t cell, std::size_t q) const {
    return qp_point_[cell * quad_.size() + q];
  }
  const RaviartThomasReference& reference() const { return ref_; }

 private:
  void check(std::size_t cell, const Point& xhat) const;

  const Mesh* mesh_;
  int k_;
  RaviartThomasReference ref_;
  TriangleQuadrature quad_;
  std::size_t nu_ = 0;
  std::size_t np_ = 0;
  std::vector<CellMap> maps_;
  std::vector<DofRef> vdofs_;
  std::vector<std::size_t> pdofs_;
  std::vector<std::size_t> boundary_dofs_;
  std::vector<bool> boundary_mask_;
  std::vector<std::size_t> free_dofs_;
  std::vector<VelocityValues> qp_basis_;
  std::vector<ScalarValues> qp_div_;
  std::vector<ScalarValues> qp_pressure_;
  std::vector<double> qp_jxw_;
  std::vector<Point> qp_point_;
};

}  // namespace swdrag
