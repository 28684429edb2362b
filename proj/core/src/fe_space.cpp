#include "swdrag/fe_space.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace swdrag {
namespace {

constexpr double kInsideTol = 1e-12;

const std::array<Point, 3> kRefVertices = {Point(0, 0), Point(1, 0), Point(0, 1)};

int num_monomials(int k) { return k == 1 ? 3 : 8; }

// Columns span RT_k on the reference triangle: P_{k-1}^2 + x * homogeneous P_{k-1}.
VelocityValues monomials(int k, const Point& p) {
  const double x = p.x(), y = p.y();
  VelocityValues m(2, num_monomials(k));
  if (k == 1) {
    m << 1, 0, x,
         0, 1, y;
  } else {
    m << 1, x, y, 0, 0, 0, x * x, x * y,
         0, 0, 0, 1, x, y, x * y, y * y;
  }
  return m;
}

ScalarValues monomial_divergences(int k, const Point& p) {
  ScalarValues d(num_monomials(k));
  if (k == 1) {
    d << 0, 0, 2;
  } else {
    d << 0, 1, 0, 0, 0, 1, 3 * p.x(), 3 * p.y();
  }
  return d;
}

// Legendre moment weights on [0, 1]: 1 and 2s - 1.
double edge_weight(int m, double s) { return m == 0 ? 1.0 : 2.0 * s - 1.0; }

}  // namespace

RaviartThomasReference::RaviartThomasReference(int k) : k_(k) {
  if (k != 1 && k != 2) throw std::invalid_argument("Raviart-Thomas order must be 1 or 2");
  ndofs_ = num_monomials(k);

  // Rows: DOF functionals; columns: monomials.
  Eigen::MatrixXd vandermonde = Eigen::MatrixXd::Zero(ndofs_, ndofs_);
  const LineQuadrature line = LineQuadrature::of_degree(8);
  for (int e = 0; e < 3; ++e) {
    const Point a = kRefVertices[(e + 1) % 3];
    const Point b = kRefVertices[(e + 2) % 3];
    const Point t = b - a;
    const Point scaled_normal(t.y(), -t.x());  // outward normal times edge length
    for (int m = 0; m < k; ++m) {
      for (std::size_t q = 0; q < line.size(); ++q) {
        const double s = line.points[q];
        const VelocityValues mono = monomials(k, a + s * t);
        vandermonde.row(e * k + m) +=
            line.weights[q] * edge_weight(m, s) * (scaled_normal.transpose() * mono);
      }
    }
  }
  if (k == 2) {
    const TriangleQuadrature tri = TriangleQuadrature::of_degree(4);
    for (std::size_t q = 0; q < tri.size(); ++q) {
      const VelocityValues mono = monomials(k, Point(tri.x(q), tri.y(q)));
      vandermonde.row(6) += tri.weights[q] * mono.row(0);
      vandermonde.row(7) += tri.weights[q] * mono.row(1);
    }
  }
  coeffs_ = vandermonde.inverse();
}

VelocityValues RaviartThomasReference::values(const Point& xhat) const {
  return monomials(k_, xhat) * coeffs_;
}

ScalarValues RaviartThomasReference::divergences(const Point& xhat) const {
  return coeffs_.transpose() * monomial_divergences(k_, xhat);
}

FunctionSpacePair::FunctionSpacePair(const Mesh& mesh, int k)
    : mesh_(&mesh), k_(k), ref_(k), quad_(TriangleQuadrature::of_degree(2 * k + 2)) {
  const std::size_t ne = mesh.num_edges();
  const std::size_t nc = mesh.num_cells();
  const int nloc = ref_.size();
  const int interior = ref_.interior_dofs();
  nu_ = ne * static_cast<std::size_t>(k) + nc * static_cast<std::size_t>(interior);
  np_ = nc * static_cast<std::size_t>(pressure_dofs_per_cell());

  maps_.reserve(nc);
  vdofs_.reserve(nc * nloc);
  pdofs_.reserve(np_);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& cv = mesh.cell(c);
    CellMap map;
    map.origin = mesh.vertex(cv[0]);
    map.jacobian.col(0) = mesh.vertex(cv[1]) - map.origin;
    map.jacobian.col(1) = mesh.vertex(cv[2]) - map.origin;
    map.det = map.jacobian.determinant();
    maps_.push_back(map);

    for (const CellEdge& ce : mesh.cell_edges(c)) {
      for (int m = 0; m < k; ++m) {
        // Even moments flip with the normal. The odd moment also flips with
        // the traversal direction, which agrees with the normal flip here.
        const double sign = (m % 2 == 0) ? ce.sign : 1.0;
        vdofs_.push_back(DofRef{ce.edge * k + m, sign});
      }
    }
    for (int j = 0; j < interior; ++j)
      vdofs_.push_back(DofRef{ne * k + c * interior + j, 1.0});
    for (int j = 0; j < pressure_dofs_per_cell(); ++j)
      pdofs_.push_back(c * pressure_dofs_per_cell() + j);
  }

  boundary_mask_.assign(nu_, false);
  for (std::size_t e : mesh.boundary_edges()) {
    for (int m = 0; m < k; ++m) {
      boundary_dofs_.push_back(e * k + m);
      boundary_mask_[e * k + m] = true;
    }
  }
  for (std::size_t i = 0; i < nu_; ++i)
    if (!boundary_mask_[i]) free_dofs_.push_back(i);

  const std::size_t nq = quad_.size();
  qp_basis_.reserve(nc * nq);
  qp_div_.reserve(nc * nq);
  qp_jxw_.reserve(nc * nq);
  qp_point_.reserve(nc * nq);
  for (std::size_t q = 0; q < nq; ++q)
    qp_pressure_.push_back(eval_pressure_basis(0, Point(quad_.x(q), quad_.y(q))));
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t q = 0; q < nq; ++q) {
      const Point xhat(quad_.x(q), quad_.y(q));
      qp_basis_.push_back(eval_velocity_basis(c, xhat));
      qp_div_.push_back(eval_velocity_div(c, xhat));
      qp_jxw_.push_back(quad_.weights[q] * std::abs(maps_[c].det));
      qp_point_.push_back(maps_[c].to_physical(xhat));
    }
  }
}

std::span<const DofRef> FunctionSpacePair::velocity_cell_dofs(std::size_t cell) const {
  const std::size_t n = static_cast<std::size_t>(ref_.size());
  return {vdofs_.data() + cell * n, n};
}

std::span<const std::size_t> FunctionSpacePair::pressure_cell_dofs(std::size_t cell) const {
  const std::size_t n = static_cast<std::size_t>(pressure_dofs_per_cell());
  return {pdofs_.data() + cell * n, n};
}

void FunctionSpacePair::check(std::size_t cell, const Point& xhat) const {
  if (cell >= maps_.size())
    throw std::out_of_range("cell index " + std::to_string(cell) + " out of range");
  if (xhat.x() < -kInsideTol || xhat.y() < -kInsideTol || xhat.sum() > 1.0 + kInsideTol)
    throw std::invalid_argument("point lies outside the reference triangle");
}

VelocityValues FunctionSpacePair::eval_velocity_basis(std::size_t cell, const Point& xhat) const {
  check(cell, xhat);
  const CellMap& map = maps_[cell];
  VelocityValues v = (map.jacobian / map.det) * ref_.values(xhat);
  const auto dofs = velocity_cell_dofs(cell);
  for (int i = 0; i < v.cols(); ++i) v.col(i) *= dofs[i].sign;
  return v;
}

ScalarValues FunctionSpacePair::eval_velocity_div(std::size_t cell, const Point& xhat) const {
  check(cell, xhat);
  ScalarValues d = ref_.divergences(xhat) / maps_[cell].det;
  const auto dofs = velocity_cell_dofs(cell);
  for (int i = 0; i < d.size(); ++i) d[i] *= dofs[i].sign;
  return d;
}

ScalarValues FunctionSpacePair::eval_pressure_basis(std::size_t cell, const Point& xhat) const {
  check(cell, xhat);
  ScalarValues w(pressure_dofs_per_cell());
  if (k_ == 1)
    w << 1.0;
  else
    w << 1.0 - xhat.x() - xhat.y(), xhat.x(), xhat.y();
  return w;
}

Point FunctionSpacePair::eval_velocity(const Eigen::VectorXd& u, std::size_t cell,
                                       const Point& xhat) const {
  const VelocityValues phi = eval_velocity_basis(cell, xhat);
  const auto dofs = velocity_cell_dofs(cell);
  Point value = Point::Zero();
  for (int i = 0; i < phi.cols(); ++i) value += u[dofs[i].index] * phi.col(i);
  return value;
}

double FunctionSpacePair::eval_divergence(const Eigen::VectorXd& u, std::size_t cell,
                                          const Point& xhat) const {
  const ScalarValues d = eval_velocity_div(cell, xhat);
  const auto dofs = velocity_cell_dofs(cell);
  double value = 0.0;
  for (int i = 0; i < d.size(); ++i) value += u[dofs[i].index] * d[i];
  return value;
}

double FunctionSpacePair::eval_pressure(const Eigen::VectorXd& eta, std::size_t cell,
                                        const Point& xhat) const {
  const ScalarValues w = eval_pressure_basis(cell, xhat);
  const auto dofs = pressure_cell_dofs(cell);
  double value = 0.0;
  for (int i = 0; i < w.size(); ++i) value += eta[dofs[i]] * w[i];
  return value;
}

Eigen::VectorXd FunctionSpacePair::interpolate_hdiv(const VectorField& u) const {
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(nu_);
  const LineQuadrature line = LineQuadrature::gauss_legendre(10);
  for (std::size_t e = 0; e < mesh_->num_edges(); ++e) {
    const auto& ed = mesh_->edge(e);
    const Point a = mesh_->vertex(ed[0]);
    const Point t = mesh_->vertex(ed[1]) - a;
    const Point scaled_normal(t.y(), -t.x());
    for (int m = 0; m < k_; ++m) {
      double moment = 0.0;
      for (std::size_t q = 0; q < line.size(); ++q) {
        const double s = line.points[q];
        moment += line.weights[q] * edge_weight(m, s) * u(a + s * t).dot(scaled_normal);
      }
      dofs[e * k_ + m] = moment;
    }
  }
  const int interior = ref_.interior_dofs();
  if (interior > 0) {
    const TriangleQuadrature tri = TriangleQuadrature::of_degree(12);
    for (std::size_t c = 0; c < maps_.size(); ++c) {
      const CellMap& map = maps_[c];
      const Eigen::Matrix2d jinv = map.jacobian.inverse();
      Point moment = Point::Zero();
      for (std::size_t q = 0; q < tri.size(); ++q) {
        const Point x = map.to_physical(Point(tri.x(q), tri.y(q)));
        moment += tri.weights[q] * map.det * (jinv * u(x));
      }
      const auto cd = velocity_cell_dofs(c);
      dofs[cd[6].index] = moment.x();
      dofs[cd[7].index] = moment.y();
    }
  }
  return dofs;
}

Eigen::VectorXd FunctionSpacePair::project_pressure(const ScalarField& eta) const {
  Eigen::VectorXd dofs(np_);
  const TriangleQuadrature tri = TriangleQuadrature::of_degree(12);
  const int nloc = pressure_dofs_per_cell();
  for (std::size_t c = 0; c < maps_.size(); ++c) {
    const CellMap& map = maps_[c];
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nloc, nloc);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nloc);
    for (std::size_t q = 0; q < tri.size(); ++q) {
      const Point xhat(tri.x(q), tri.y(q));
      const ScalarValues w = eval_pressure_basis(c, xhat);
      const double jw = tri.weights[q] * std::abs(map.det);
      mass += jw * w * w.transpose();
      rhs += jw * eta(map.to_physical(xhat)) * w;
    }
    const Eigen::VectorXd local = mass.ldlt().solve(rhs);
    const auto pd = pressure_cell_dofs(c);
    for (int i = 0; i < nloc; ++i) dofs[pd[i]] = local[i];
  }
  return dofs;
}

}  // namespace swdrag
