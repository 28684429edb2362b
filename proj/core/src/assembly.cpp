#include "swdrag/assembly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace swdrag {
namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Point perp(const Point& v) { return Point(-v.y(), v.x()); }

SparseOperator from_triplets(Eigen::Index rows, Eigen::Index cols, const Triplets& t) {
  SparseOperator m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

// Velocity-velocity bilinear form a(u, v) = sum_q w(x_q) * kernel(phi_j, phi_i).
template <typename Weight, typename Kernel>
SparseOperator velocity_form(const FunctionSpacePair& space, Weight weight, Kernel kernel) {
  const TriangleQuadrature& quad = space.quadrature();
  const int nloc = space.velocity_dofs_per_cell();
  Triplets trip;
  trip.reserve(space.mesh().num_cells() * nloc * nloc);
  Eigen::MatrixXd local(nloc, nloc);
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    local.setZero();
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const VelocityValues& phi = space.qp_basis(c, q);
      const double jw = space.qp_jxw(c, q) * weight(space.qp_point(c, q));
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j) local(i, j) += jw * kernel(phi.col(j), phi.col(i));
    }
    const auto dofs = space.velocity_cell_dofs(c);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j)
        trip.emplace_back(dofs[i].index, dofs[j].index, local(i, j));
  }
  const auto n = static_cast<Eigen::Index>(space.num_velocity_dofs());
  return from_triplets(n, n, trip);
}

// Load vector sum_q (value(x_q), phi_i) for a vector-valued integrand.
template <typename Integrand>
Eigen::VectorXd velocity_load(const FunctionSpacePair& space, const TriangleQuadrature& quad,
                              Integrand value) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(space.num_velocity_dofs());
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const CellMap& map = space.cell_map(c);
    const auto dofs = space.velocity_cell_dofs(c);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point xhat(quad.x(q), quad.y(q));
      const VelocityValues phi = space.eval_velocity_basis(c, xhat);
      const double jw = quad.weights[q] * std::abs(map.det);
      const Point f = value(c, xhat, map.to_physical(xhat));
      for (int i = 0; i < phi.cols(); ++i) load[dofs[i].index] += jw * f.dot(phi.col(i));
    }
  }
  return load;
}

}  // namespace

ModelParams ModelParams::constant(double epsilon, double beta, double f, double depth,
                                  DampingLaw damping) {
  ModelParams p;
  p.epsilon = epsilon;
  p.beta = beta;
  p.coriolis = [f](const Point&) { return f; };
  p.depth = [depth](const Point&) { return depth; };
  p.coriolis_max = std::abs(f);
  p.depth_min = depth;
  p.depth_max = depth;
  p.damping = damping;
  return p;
}

void ModelParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("Rossby number must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("Burger number must be positive");
  if (!(depth_min > 0.0) || depth_max < depth_min)
    throw std::invalid_argument("depth bounds must satisfy 0 < H_min <= H_max");
}

SparseOperator mass_velocity_weighted(const FunctionSpacePair& space, const ModelParams& params) {
  return velocity_form(
      space, [&](const Point& x) { return 1.0 / params.depth(x); },
      [](const auto& pj, const auto& pi) { return pj.dot(pi); });
}

SparseOperator mass_velocity(const FunctionSpacePair& space) {
  return velocity_form(
      space, [](const Point&) { return 1.0; },
      [](const auto& pj, const auto& pi) { return pj.dot(pi); });
}

SparseOperator coriolis_op(const FunctionSpacePair& space, const ModelParams& params) {
  return velocity_form(
      space,
      [&](const Point& x) { return params.coriolis(x) / (params.epsilon * params.depth(x)); },
      [](const auto& pj, const auto& pi) { return perp(pj).dot(pi); });
}

SparseOperator divergence_op(const FunctionSpacePair& space) {
  const TriangleQuadrature& quad = space.quadrature();
  const int nu = space.velocity_dofs_per_cell();
  const int np = space.pressure_dofs_per_cell();
  Triplets trip;
  Eigen::MatrixXd local(np, nu);
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const CellMap& map = space.cell_map(c);
    local.setZero();
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point xhat(quad.x(q), quad.y(q));
      const ScalarValues div = space.eval_velocity_div(c, xhat);
      const ScalarValues w = space.eval_pressure_basis(c, xhat);
      local += quad.weights[q] * std::abs(map.det) * (w * div.transpose());
    }
    const auto vd = space.velocity_cell_dofs(c);
    const auto pd = space.pressure_cell_dofs(c);
    for (int a = 0; a < np; ++a)
      for (int i = 0; i < nu; ++i) trip.emplace_back(pd[a], vd[i].index, local(a, i));
  }
  return from_triplets(static_cast<Eigen::Index>(space.num_pressure_dofs()),
                       static_cast<Eigen::Index>(space.num_velocity_dofs()), trip);
}

SparseOperator pressure_mass(const FunctionSpacePair& space) {
  const TriangleQuadrature& quad = space.quadrature();
  const int np = space.pressure_dofs_per_cell();
  Triplets trip;
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const CellMap& map = space.cell_map(c);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(np, np);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const ScalarValues w = space.eval_pressure_basis(c, Point(quad.x(q), quad.y(q)));
      local += quad.weights[q] * std::abs(map.det) * (w * w.transpose());
    }
    const auto pd = space.pressure_cell_dofs(c);
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b) trip.emplace_back(pd[a], pd[b], local(a, b));
  }
  const auto n = static_cast<Eigen::Index>(space.num_pressure_dofs());
  return from_triplets(n, n, trip);
}

Operators assemble_operators(const FunctionSpacePair& space, const ModelParams& params) {
  params.validate();
  Operators ops;
  ops.mass = mass_velocity_weighted(space, params);
  ops.mass_plain = mass_velocity(space);
  ops.coriolis = coriolis_op(space, params);
  ops.divergence = divergence_op(space);
  ops.pressure_mass = pressure_mass(space);
  return ops;
}

Eigen::VectorXd damping_residual(const FunctionSpacePair& space, const ModelParams& params,
                                 const Eigen::VectorXd& u) {
  if (static_cast<std::size_t>(u.size()) != space.num_velocity_dofs())
    throw std::invalid_argument("damping_residual: coefficient vector has wrong size");
  const DampingLaw& law = params.damping;
  if (law.kind() == DampingKind::none) return Eigen::VectorXd::Zero(u.size());
  Eigen::VectorXd load = Eigen::VectorXd::Zero(u.size());
  const std::size_t nq = space.quadrature().size();
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const auto dofs = space.velocity_cell_dofs(c);
    for (std::size_t q = 0; q < nq; ++q) {
      const VelocityValues& phi = space.qp_basis(c, q);
      Point uq = Point::Zero();
      for (int i = 0; i < phi.cols(); ++i) uq += u[dofs[i].index] * phi.col(i);
      const Point g = space.qp_jxw(c, q) * law.eval(uq);
      for (int i = 0; i < phi.cols(); ++i) load[dofs[i].index] += g.dot(phi.col(i));
    }
  }
  return load;
}

void damping_jacobian_blocks(const FunctionSpacePair& space, const ModelParams& params,
                             const Eigen::VectorXd& u, const JacobianBlockSink& sink) {
  if (static_cast<std::size_t>(u.size()) != space.num_velocity_dofs())
    throw std::invalid_argument("damping_jacobian: coefficient vector has wrong size");
  const DampingLaw& law = params.damping;
  const std::size_t nq = space.quadrature().size();
  const int nloc = space.velocity_dofs_per_cell();
  Eigen::MatrixXd local(nloc, nloc);
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const auto dofs = space.velocity_cell_dofs(c);
    local.setZero();
    for (std::size_t q = 0; q < nq; ++q) {
      const VelocityValues& phi = space.qp_basis(c, q);
      Point uq = Point::Zero();
      for (int i = 0; i < nloc; ++i) uq += u[dofs[i].index] * phi.col(i);
      const Eigen::Matrix2d dg = law.jacobian(uq);
      local.noalias() += space.qp_jxw(c, q) * phi.transpose() * dg * phi;
    }
    sink(c, local);
  }
}

SparseOperator damping_jacobian(const FunctionSpacePair& space, const ModelParams& params,
                                const Eigen::VectorXd& u) {
  const int nloc = space.velocity_dofs_per_cell();
  Triplets trip;
  trip.reserve(space.mesh().num_cells() * nloc * nloc);
  damping_jacobian_blocks(space, params, u, [&](std::size_t c, const Eigen::MatrixXd& local) {
    const auto dofs = space.velocity_cell_dofs(c);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) trip.emplace_back(dofs[i].index, dofs[j].index, local(i, j));
  });
  const auto n = static_cast<Eigen::Index>(space.num_velocity_dofs());
  return from_triplets(n, n, trip);
}

Eigen::VectorXd sync_forcing_functional(const FunctionSpacePair& space, double t,
                                        const ModelParams& params) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(space.num_velocity_dofs());
  const double amplitude = params.pressure_coupling() * std::sin(t);
  if (amplitude == 0.0) return load;
  const TriangleQuadrature& quad = space.quadrature();
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const auto dofs = space.velocity_cell_dofs(c);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point& x = space.qp_point(c, q);
      const ScalarValues& div = space.qp_div(c, q);
      const double jw = space.qp_jxw(c, q) * amplitude * x.x() * x.y();
      for (int i = 0; i < div.size(); ++i) load[dofs[i].index] += jw * div[i];
    }
  }
  return load;
}

namespace mms {

using std::numbers::pi;

Point velocity(const Point& x, double t) {
  const double a = std::cos(pi * t);
  return a * Point(std::sin(pi * x.x()) * std::cos(pi * x.y()),
                   std::cos(pi * x.x()) * std::sin(pi * x.y()));
}

double elevation(const Point& x, double t) {
  return std::sin(pi * x.x()) * std::sin(2 * pi * x.y()) * std::cos(pi * t);
}

double divergence(const Point& x, double t) {
  return 2 * pi * std::cos(pi * t) * std::cos(pi * x.x()) * std::cos(pi * x.y());
}

Point momentum_forcing(const Point& x, double t, const ModelParams& params) {
  const Point u = velocity(x, t);
  const Point u_t = -pi * std::sin(pi * t) *
                    Point(std::sin(pi * x.x()) * std::cos(pi * x.y()),
                          std::cos(pi * x.x()) * std::sin(pi * x.y()));
  const Point grad_eta = std::cos(pi * t) *
                         Point(pi * std::cos(pi * x.x()) * std::sin(2 * pi * x.y()),
                               2 * pi * std::sin(pi * x.x()) * std::cos(2 * pi * x.y()));
  const double h = params.depth(x);
  const double f = params.coriolis(x);
  return u_t / h + f / (h * params.epsilon) * perp(u) + params.pressure_coupling() * grad_eta +
         params.damping.eval(u);
}

double continuity_forcing(const Point& x, double t) {
  const double eta_t = -pi * std::sin(pi * x.x()) * std::sin(2 * pi * x.y()) * std::sin(pi * t);
  return eta_t + divergence(x, t);
}

}  // namespace mms

std::pair<Eigen::VectorXd, Eigen::VectorXd> mms_forcing_functionals(
    const FunctionSpacePair& space, double t, const ModelParams& params) {
  const TriangleQuadrature& quad = space.quadrature();
  Eigen::VectorXd fu = velocity_load(space, quad, [&](std::size_t, const Point&, const Point& x) {
    return mms::momentum_forcing(x, t, params);
  });
  Eigen::VectorXd feta = Eigen::VectorXd::Zero(space.num_pressure_dofs());
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const CellMap& map = space.cell_map(c);
    const auto pd = space.pressure_cell_dofs(c);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point xhat(quad.x(q), quad.y(q));
      const ScalarValues w = space.eval_pressure_basis(c, xhat);
      const double jw =
          quad.weights[q] * std::abs(map.det) * mms::continuity_forcing(map.to_physical(xhat), t);
      for (int a = 0; a < w.size(); ++a) feta[pd[a]] += jw * w[a];
    }
  }
  return {std::move(fu), std::move(feta)};
}

}  // namespace swdrag
