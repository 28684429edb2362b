#include "swdrag/time_stepper.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/LU>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "swdrag/diagnostics.hpp"

namespace swdrag {
namespace {

// Keeps the rows/columns of the free DOFs. Explicit zeros are retained so the
// sparsity pattern is independent of the state.
SparseOperator restrict_to(const SparseOperator& a, const std::vector<Eigen::Index>& map_rows,
                           Eigen::Index nrows, const std::vector<Eigen::Index>& map_cols,
                           Eigen::Index ncols) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(a.nonZeros());
  for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
    const Eigen::Index jc = map_cols[col];
    if (jc < 0) continue;
    for (SparseOperator::InnerIterator it(a, col); it; ++it) {
      const Eigen::Index ir = map_rows[it.row()];
      if (ir >= 0) trip.emplace_back(ir, jc, it.value());
    }
  }
  SparseOperator r(nrows, ncols);
  r.setFromTriplets(trip.begin(), trip.end());
  r.makeCompressed();
  return r;
}

// Inverse of a block-diagonal pressure mass matrix (one block per cell).
SparseOperator inverse_pressure_mass(const FunctionSpacePair& space, const SparseOperator& mw) {
  const int nloc = space.pressure_dofs_per_cell();
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const auto pd = space.pressure_cell_dofs(c);
    Eigen::MatrixXd block(nloc, nloc);
    for (int a = 0; a < nloc; ++a)
      for (int b = 0; b < nloc; ++b)
        block(a, b) = mw.coeff(static_cast<Eigen::Index>(pd[a]), static_cast<Eigen::Index>(pd[b]));
    const Eigen::MatrixXd inv = block.inverse();
    for (int a = 0; a < nloc; ++a)
      for (int b = 0; b < nloc; ++b) trip.emplace_back(pd[a], pd[b], inv(a, b));
  }
  SparseOperator r(mw.rows(), mw.cols());
  r.setFromTriplets(trip.begin(), trip.end());
  return r;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("Newton tolerance must be positive");
  if (newton_max_iter < 1) throw std::invalid_argument("Newton iteration limit must be >= 1");
  if (!(linear_tol > 0.0)) throw std::invalid_argument("linear solver tolerance must be positive");
}

struct TimeStepper::Impl {
  const FunctionSpacePair& space;
  const ModelParams& params;
  const Operators& ops;
  ForcingTerms forcing;

  std::vector<Eigen::Index> to_free;       // full index -> free index or -1
  std::vector<Eigen::Index> identity_map;  // pressure rows kept as-is
  Eigen::Index nfree = 0;

  SparseOperator mw_inv;       // M_W^{-1}
  SparseOperator linear_free;  // (2/dt) M + C + kappa dt/2 B^T M_W^{-1} B on free DOFs
  SparseOperator mass_free;
  SparseOperator div_free;     // B restricted to free columns
  bool symmetric = true;

  // Jacobian storage sharing the pattern of linear_free, plus the value slot of
  // every (cell, i, j) entry (-1 when a boundary DOF is involved).
  SparseOperator jac;
  std::vector<Eigen::Index> slots;

  Eigen::SparseLU<SparseOperator, Eigen::COLAMDOrdering<int>> lu;
  Eigen::SimplicialLDLT<SparseOperator> ldlt;
  bool analyzed = false;
  bool affine_factored = false;

  Impl(const FunctionSpacePair& s, const ModelParams& p, const Operators& o, ForcingTerms f)
      : space(s), params(p), ops(o), forcing(std::move(f)) {}

  Eigen::VectorXd expand(const Eigen::VectorXd& free) const {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(space.num_velocity_dofs());
    const auto& dofs = space.free_velocity_dofs();
    for (std::size_t i = 0; i < dofs.size(); ++i) full[dofs[i]] = free[i];
    return full;
  }

  Eigen::VectorXd shrink(const Eigen::VectorXd& full) const {
    const auto& dofs = space.free_velocity_dofs();
    Eigen::VectorXd free(dofs.size());
    for (std::size_t i = 0; i < dofs.size(); ++i) free[i] = full[dofs[i]];
    return free;
  }

  const SparseOperator& jacobian(const Eigen::VectorXd& ubar_full) {
    if (params.damping.kind() == DampingKind::none) return linear_free;
    std::copy(linear_free.valuePtr(), linear_free.valuePtr() + linear_free.nonZeros(), jac.valuePtr());
    double* values = jac.valuePtr();
    const int nloc = space.velocity_dofs_per_cell();
    damping_jacobian_blocks(space, params, ubar_full, [&](std::size_t c, const Eigen::MatrixXd& local) {
      const Eigen::Index* slot = slots.data() + c * nloc * nloc;
      for (int j = 0; j < nloc; ++j)
        for (int i = 0; i < nloc; ++i) {
          const Eigen::Index k = slot[j * nloc + i];
          if (k >= 0) values[k] += local(i, j);
        }
    });
    return jac;
  }

  Eigen::VectorXd solve(const SparseOperator& jac, const Eigen::VectorXd& rhs, bool affine,
                        LinearSolverKind kind, double tol) {
    if (kind == LinearSolverKind::conjugate_gradient) {
      Eigen::ConjugateGradient<SparseOperator, Eigen::Lower | Eigen::Upper> cg;
      cg.setTolerance(tol);
      cg.setMaxIterations(10 * static_cast<Eigen::Index>(rhs.size()) + 100);
      cg.compute(jac);
      Eigen::VectorXd x = cg.solve(rhs);
      if (cg.info() != Eigen::Success)
        throw SolverError("conjugate gradient did not converge (error " +
                              std::to_string(cg.error()) + ")",
                          cg.error());
      return x;
    }
    if (symmetric) {
      if (!(affine && affine_factored)) {
        if (!analyzed) {
          ldlt.analyzePattern(jac);
          analyzed = true;
        }
        ldlt.factorize(jac);
        if (ldlt.info() != Eigen::Success) throw SolverError("sparse LDLT factorization failed", NAN);
        affine_factored = affine;
      }
      return ldlt.solve(rhs);
    }
    if (!(affine && affine_factored)) {
      if (!analyzed) {
        lu.analyzePattern(jac);
        analyzed = true;
      }
      lu.factorize(jac);
      if (lu.info() != Eigen::Success)
        throw SolverError("sparse LU factorization failed: " + lu.lastErrorMessage(), NAN);
      affine_factored = affine;
    }
    Eigen::VectorXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw SolverError("sparse LU solve failed", NAN);
    return x;
  }
};

TimeStepper::TimeStepper(const FunctionSpacePair& space, const ModelParams& params,
                         const Operators& ops, SolverConfig config, ForcingTerms forcing)
    : config_(config), impl_(std::make_unique<Impl>(space, params, ops, std::move(forcing))) {
  config_.validate();
  params.validate();
  Impl& m = *impl_;
  const double dt = config_.dt;
  const double kappa = params.pressure_coupling();

  m.to_free.assign(space.num_velocity_dofs(), -1);
  const auto& free = space.free_velocity_dofs();
  for (std::size_t i = 0; i < free.size(); ++i) m.to_free[free[i]] = static_cast<Eigen::Index>(i);
  m.nfree = static_cast<Eigen::Index>(free.size());
  m.identity_map.resize(space.num_pressure_dofs());
  for (std::size_t i = 0; i < m.identity_map.size(); ++i)
    m.identity_map[i] = static_cast<Eigen::Index>(i);

  m.mw_inv = inverse_pressure_mass(space, ops.pressure_mass);
  m.mass_free = restrict_to(ops.mass, m.to_free, m.nfree, m.to_free, m.nfree);
  m.div_free = restrict_to(ops.divergence, m.identity_map,
                           static_cast<Eigen::Index>(space.num_pressure_dofs()), m.to_free, m.nfree);
  const SparseOperator cor_free = restrict_to(ops.coriolis, m.to_free, m.nfree, m.to_free, m.nfree);
  const SparseOperator grad_div = SparseOperator(m.div_free.transpose()) * m.mw_inv * m.div_free;
  m.linear_free = (2.0 / dt) * m.mass_free + cor_free + (kappa * dt / 2.0) * grad_div;
  m.linear_free.makeCompressed();
  m.symmetric = cor_free.norm() == 0.0;

  // Union with the cell-coupling pattern so every damping block has a slot.
  const SparseOperator coupling = restrict_to(ops.mass_plain, m.to_free, m.nfree, m.to_free, m.nfree);
  m.linear_free = m.linear_free + 0.0 * coupling;
  m.linear_free.makeCompressed();
  m.jac = m.linear_free;
  const int nloc = space.velocity_dofs_per_cell();
  m.slots.assign(space.mesh().num_cells() * nloc * nloc, -1);
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const auto dofs = space.velocity_cell_dofs(c);
    for (int j = 0; j < nloc; ++j) {
      const Eigen::Index col = m.to_free[dofs[j].index];
      if (col < 0) continue;
      for (int i = 0; i < nloc; ++i) {
        const Eigen::Index row = m.to_free[dofs[i].index];
        if (row < 0) continue;
        const auto* begin = m.jac.innerIndexPtr() + m.jac.outerIndexPtr()[col];
        const auto* end = m.jac.innerIndexPtr() + m.jac.outerIndexPtr()[col + 1];
        const auto* it = std::lower_bound(begin, end, row);
        if (it == end || *it != row) throw std::logic_error("TimeStepper: jacobian pattern is incomplete");
        m.slots[c * nloc * nloc + j * nloc + i] = it - m.jac.innerIndexPtr();
      }
    }
  }
  if (config_.linear_solver == LinearSolverKind::conjugate_gradient && !m.symmetric)
    throw std::invalid_argument("conjugate gradient needs a symmetric system (Coriolis term is nonzero)");
}

TimeStepper::~TimeStepper() = default;
TimeStepper::TimeStepper(TimeStepper&&) noexcept = default;
TimeStepper& TimeStepper::operator=(TimeStepper&&) noexcept = default;

State TimeStepper::step(const State& state, StepInfo* info) {
  Impl& m = *impl_;
  const auto nu = static_cast<Eigen::Index>(m.space.num_velocity_dofs());
  const auto np = static_cast<Eigen::Index>(m.space.num_pressure_dofs());
  if (state.u.size() != nu || state.eta.size() != np)
    throw std::invalid_argument("TimeStepper::step: state does not match the function space");

  const double dt = config_.dt;
  const double kappa = m.params.pressure_coupling();
  const double t_mid = state.t + 0.5 * dt;
  const bool affine = m.params.damping.is_affine();

  const Eigen::VectorXd f_u = m.forcing.velocity ? m.forcing.velocity(t_mid) : Eigen::VectorXd::Zero(nu);
  const Eigen::VectorXd f_eta =
      m.forcing.pressure ? m.forcing.pressure(t_mid) : Eigen::VectorXd::Zero(np);

  // eta_mid = eta^n + dt/2 M_W^{-1} (F_eta - B u_mid) = eta_star - dt/2 M_W^{-1} B u_mid
  const Eigen::VectorXd eta_star = state.eta + 0.5 * dt * (m.mw_inv * f_eta);

  const Eigen::VectorXd un_free = m.shrink(state.u);
  const Eigen::VectorXd rhs = (2.0 / dt) * (m.mass_free * un_free) +
                              kappa * (m.div_free.transpose() * eta_star) + m.shrink(f_u);

  Eigen::VectorXd ubar = un_free;
  Eigen::VectorXd ubar_full = m.expand(ubar);
  auto residual = [&]() -> Eigen::VectorXd {
    Eigen::VectorXd r = m.linear_free * ubar - rhs;
    if (m.params.damping.kind() != DampingKind::none)
      r += m.shrink(damping_residual(m.space, m.params, ubar_full));
    return r;
  };

  Eigen::VectorXd r = residual();
  double rnorm = r.norm();
  int iterations = 0;
  while (!(rnorm < config_.newton_tol)) {
    if (iterations >= config_.newton_max_iter || !std::isfinite(rnorm)) {
      std::ostringstream os;
      os << "Newton did not converge at t=" << state.t << " after " << iterations
         << " iterations (residual " << rnorm << ")";
      throw SolverError(os.str(), rnorm);
    }
    const SparseOperator& jac = m.jacobian(ubar_full);
    ubar -= m.solve(jac, r, affine, config_.linear_solver, config_.linear_tol);
    ubar_full = m.expand(ubar);
    ++iterations;
    r = residual();
    rnorm = r.norm();
  }

  State next;
  next.t = state.t + dt;
  next.u = 2.0 * ubar_full - state.u;
  const Eigen::VectorXd div_mid = m.ops.divergence * ubar_full;
  const Eigen::VectorXd eta_mid = eta_star - 0.5 * dt * (m.mw_inv * div_mid);
  next.eta = 2.0 * eta_mid - state.eta;

  if (info) {
    info->newton_iterations = iterations;
    info->residual = rnorm;
    info->dissipation = m.params.damping.kind() == DampingKind::none
                            ? 0.0
                            : damping_residual(m.space, m.params, ubar_full).dot(ubar_full);
    info->forcing_power = f_u.dot(ubar_full) + kappa * f_eta.dot(eta_mid);
    info->u_mid = ubar_full;
  }
  return next;
}

State random_initial_state(const FunctionSpacePair& space, const ModelParams& params,
                           const Operators& ops, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto draw = [&gen]() {
    const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
  };
  for (int attempt = 0; attempt < 16; ++attempt) {
    State s;
    s.u.resize(space.num_velocity_dofs());
    s.eta.resize(space.num_pressure_dofs());
    for (Eigen::Index i = 0; i < s.u.size(); ++i) s.u[i] = draw();
    for (Eigen::Index i = 0; i < s.eta.size(); ++i) s.eta[i] = draw();
    for (std::size_t i : space.boundary_velocity_dofs()) s.u[i] = 0.0;

    // Subtracting a constant: the pressure basis sums to one on every cell.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.eta.size());
    const double area = ones.dot(ops.pressure_mass * ones);
    s.eta.array() -= ones.dot(ops.pressure_mass * s.eta) / area;

    const double e = energy(s, ops, params);
    if (e > 0.0 && std::isfinite(e)) {
      const double scale = 1.0 / std::sqrt(e);
      s.u *= scale;
      s.eta *= scale;
      return s;
    }
    gen.seed(seed + 0x9E3779B97F4A7C15ULL * (attempt + 1));
  }
  throw std::runtime_error("random_initial_state: could not draw a nonzero state");
}

State mms_initial_state(const FunctionSpacePair& space, double t) {
  State s;
  s.t = t;
  s.u = space.interpolate_hdiv([t](const Point& x) { return mms::velocity(x, t); });
  s.eta = space.project_pressure([t](const Point& x) { return mms::elevation(x, t); });
  for (std::size_t i : space.boundary_velocity_dofs()) s.u[i] = 0.0;
  return s;
}

}  // namespace swdrag
