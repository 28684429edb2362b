#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "swdrag/assembly.hpp"
#include "swdrag/fe_space.hpp"
#include "swdrag/state.hpp"

namespace swdrag {

enum class LinearSolverKind { direct, conjugate_gradient };

struct SolverConfig {
  double dt = 0.025;
  double newton_tol = 1e-10;  // absolute, Euclidean norm of the residual
  int newton_max_iter = 30;
  LinearSolverKind linear_solver = LinearSolverKind::direct;
  double linear_tol = 1e-13;  // relative, conjugate gradient only

  void validate() const;
};

/// Time-dependent load vectors. An empty function means zero forcing.
struct ForcingTerms {
  std::function<Eigen::VectorXd(double)> velocity;
  std::function<Eigen::VectorXd(double)> pressure;
};

struct StepInfo {
  int newton_iterations = 0;
  double residual = 0.0;
  double dissipation = 0.0;    // (G(u_mid), u_mid)
  double forcing_power = 0.0;  // (F, u_mid) + beta/eps^2 (F_eta, eta_mid)
  Eigen::VectorXd u_mid;
};

/// Newton or linear-solver failure inside a step.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Crank-Nicolson (implicit midpoint) integrator for the mixed system.
///
/// Each step solves, with u_mid = (u^n + u^{n+1})/2 and likewise eta_mid,
///   M (u^{n+1} - u^n)/dt + C u_mid - beta/eps^2 B^T eta_mid + G(u_mid) = F(t_mid)
///   M_W (eta^{n+1} - eta^n)/dt + B u_mid = F_eta(t_mid)
/// The elevation is eliminated cellwise (M_W is block diagonal), leaving a
/// nonlinear system in the free velocity coefficients that is solved by
/// Newton's method.
class TimeStepper {
 public:
  TimeStepper(const FunctionSpacePair& space, const ModelParams& params, const Operators& ops,
              SolverConfig config, ForcingTerms forcing = {});
  ~TimeStepper();
  TimeStepper(TimeStepper&&) noexcept;
  TimeStepper& operator=(TimeStepper&&) noexcept;

  State step(const State& state, StepInfo* info = nullptr);

  const SolverConfig& config() const { return config_; }

 private:
  struct Impl;

  SolverConfig config_;
  std::unique_ptr<Impl> impl_;
};

/// Coefficients drawn uniformly from [-1, 1] (mt19937_64, top 53 bits),
/// boundary velocity coefficients zeroed, elevation shifted to zero mean and
/// the whole state scaled to unit energy.
State random_initial_state(const FunctionSpacePair& space, const ModelParams& params,
                           const Operators& ops, std::uint64_t seed);

/// Interpolant / projection of the manufactured solution at time t.
State mms_initial_state(const FunctionSpacePair& space, double t = 0.0);

}  // namespace swdrag
