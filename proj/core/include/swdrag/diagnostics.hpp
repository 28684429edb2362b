#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swdrag/assembly.hpp"
#include "swdrag/fe_space.hpp"
#include "swdrag/state.hpp"

namespace swdrag {

/// E = 1/2 (u/H, u) + beta/(2 eps^2) (eta, eta), through the assembled mass matrices.
double energy(const Eigen::VectorXd& u, const Eigen::VectorXd& eta, const Operators& ops,
              const ModelParams& params);
double energy(const State& state, const Operators& ops, const ModelParams& params);

/// Same functional, integrated pointwise from the discrete fields.
double energy_by_quadrature(const FunctionSpacePair& space, const ModelParams& params,
                            const State& state);

struct L2Errors {
  double u = 0.0;
  double eta = 0.0;
};

L2Errors l2_errors(const FunctionSpacePair& space, const State& state, const VectorField& exact_u,
                   const ScalarField& exact_eta);

struct TraceSample {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double forcing_power = 0.0;
};

/// Energy history of one run. Times strictly increase, energies are >= 0.
struct EnergyTrace {
  std::vector<TraceSample> samples;
  std::map<std::string, std::string> metadata;

  /// Throws std::invalid_argument when the ordering/sign invariants break.
  void append(const TraceSample& s);
  std::size_t size() const { return samples.size(); }
};

/// Header `t,E,dissipation,forcing_power`, one row per sample, 17 significant digits.
void write_trace_csv(std::ostream& os, const EnergyTrace& trace);
EnergyTrace read_trace_csv(std::istream& is);

struct FitWindow {
  double t_lo = 20.0;
  double t_hi = 80.0;
  /// Samples with E at or below this level are ignored (round-off plateau).
  double energy_floor = 1e-6;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs two or more points.
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Slope of log E against log t inside the window (algebraic decay exponent).
/// Throws std::invalid_argument with fewer than 10 usable samples.
LineFit fit_decay_exponent(const EnergyTrace& trace, const FitWindow& window);
/// Slope of log E against t inside the window (exponential rate).
LineFit fit_exponential_rate(const EnergyTrace& trace, const FitWindow& window);

/// Observed convergence order: slope of log(error) against log(h).
double fit_order(const std::vector<double>& h, const std::vector<double>& errors);

}  // namespace swdrag
