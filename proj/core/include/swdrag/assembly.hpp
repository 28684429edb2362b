#pragma once

#include <functional>
#include <utility>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "swdrag/damping.hpp"
#include "swdrag/fe_space.hpp"

namespace swdrag {

using SparseOperator = Eigen::SparseMatrix<double>;

/// Nondimensional coefficients of the momentum-form model
///   (1/H) u_t + f/(H eps) u^perp + beta/eps^2 grad eta + g(u) = F,
///   eta_t + div u = 0.
struct ModelParams {
  double epsilon = 0.1;  // Rossby number
  double beta = 0.1;     // Burger number
  ScalarField coriolis = [](const Point&) { return 0.0; };
  ScalarField depth = [](const Point&) { return 1.0; };
  double coriolis_max = 0.0;
  double depth_min = 1.0;
  double depth_max = 1.0;
  DampingLaw damping = DampingLaw::linear(10.0);

  static ModelParams constant(double epsilon, double beta, double f, double depth,
                              DampingLaw damping);

  /// beta / eps^2, the weight of the elevation in the energy.
  double pressure_coupling() const { return beta / (epsilon * epsilon); }
  /// Throws std::invalid_argument unless eps, beta and the depth bounds are positive.
  void validate() const;
};

/// Operators that do not depend on the state; assembled once per run.
struct Operators {
  SparseOperator mass;           // (u/H, v)
  SparseOperator mass_plain;     // (u, v)
  SparseOperator coriolis;       // (1/eps) (f/H u^perp, v)
  SparseOperator divergence;     // (div u, w), rows are pressure DOFs
  SparseOperator pressure_mass;  // (eta, w)
};

SparseOperator mass_velocity_weighted(const FunctionSpacePair& space, const ModelParams& params);
SparseOperator mass_velocity(const FunctionSpacePair& space);
SparseOperator divergence_op(const FunctionSpacePair& space);
SparseOperator coriolis_op(const FunctionSpacePair& space, const ModelParams& params);
SparseOperator pressure_mass(const FunctionSpacePair& space);

Operators assemble_operators(const FunctionSpacePair& space, const ModelParams& params);

/// G(u)_i = (g(u_h), phi_i).
Eigen::VectorXd damping_residual(const FunctionSpacePair& space, const ModelParams& params,
                                 const Eigen::VectorXd& u);
/// Derivative of damping_residual with respect to the coefficients of u.
SparseOperator damping_jacobian(const FunctionSpacePair& space, const ModelParams& params,
                                const Eigen::VectorXd& u);
/// Same derivative, delivered as one dense block per cell (rows/cols follow velocity_cell_dofs).
using JacobianBlockSink = std::function<void(std::size_t, const Eigen::MatrixXd&)>;
void damping_jacobian_blocks(const FunctionSpacePair& space, const ModelParams& params,
                             const Eigen::VectorXd& u, const JacobianBlockSink& sink);

/// (F, v) = beta/eps^2 sin(t) (xy, div v).
Eigen::VectorXd sync_forcing_functional(const FunctionSpacePair& space, double t,
                                        const ModelParams& params);

/// Manufactured solution on the unit square and the forcings it induces.
namespace mms {
Point velocity(const Point& x, double t);
double elevation(const Point& x, double t);
double divergence(const Point& x, double t);
/// (1/H) u_t + f/(H eps) u^perp + beta/eps^2 grad eta + g(u).
Point momentum_forcing(const Point& x, double t, const ModelParams& params);
/// eta_t + div u.
double continuity_forcing(const Point& x, double t);
}  // namespace mms

/// Velocity and pressure load vectors of the manufactured forcings at time t.
std::pair<Eigen::VectorXd, Eigen::VectorXd> mms_forcing_functionals(
    const FunctionSpacePair& space, double t, const ModelParams& params);

}  // namespace swdrag
