#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "swdrag/diagnostics.hpp"
#include "swdrag/time_stepper.hpp"

namespace swdrag {

/// Bad or missing configuration value (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Experiment { damping, sync, converge, envelope };

Experiment parse_experiment(const std::string& name);
std::string to_string(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::damping;
  std::size_t n = 20;
  int k = 1;
  double dt = 0.0;          // 0 selects dt_factor * h
  double dt_factor = 0.5;
  double t_final = 100.0;
  double epsilon = 0.1;
  double beta = 0.1;
  double coriolis = 0.0;
  double depth = 1.0;
  std::string law = "power:3";
  double coefficient = 10.0;
  std::uint64_t seed = 1;
  std::uint64_t seed2 = 2;
  std::string output_dir = ".";
  FitWindow fit;
  bool fit_lo_given = false;
  std::vector<std::size_t> meshes{4, 8, 16, 32};
  double newton_tol = 1e-10;
  int newton_max_iter = 30;
  LinearSolverKind linear_solver = LinearSolverKind::direct;
  bool svg = true;
  // envelope
  double poincare = 1.0;
  double initial_energy = 1.0;
  double growth = 0.0;      // 0 derives M from the law
  double rate = 0.0;        // 0 derives gamma from the constants
  double t_max = 100.0;
  std::size_t samples = 201;

  /// Defaults for an experiment: eps = beta = 0.1, f = 0, C = 10 and
  /// T = 100 for damping/sync; unit coefficients, linear drag and T = 10
  /// for the convergence study.
  static ExperimentConfig defaults(Experiment e);

  /// Applies one `key=value` setting. Throws ConfigError for unknown keys
  /// or unparsable values.
  void set(const std::string& key, const std::string& value);
  /// Reads flat `key = value` lines; `#` starts a comment.
  void load(std::istream& is);
  /// Throws ConfigError when the combination is unusable.
  void validate() const;

  DampingLaw damping_law() const;
  ModelParams model_params() const;
  SolverConfig solver_config(double h) const;
  double time_step(double h) const { return dt > 0.0 ? dt : dt_factor * h; }
  /// The configured window; affine laws start at t = 0 unless fit_lo was set.
  FitWindow fit_window() const;

  static const std::vector<std::string>& keys();
};

}  // namespace swdrag
