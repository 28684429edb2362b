#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "swdrag/config.hpp"
#include "swdrag/decay_theory.hpp"
#include "swdrag/diagnostics.hpp"

namespace swdrag {

struct DampingResult {
  EnergyTrace trace;
  LineFit fit;               // algebraic, or exponential when `exponential`
  bool exponential = false;  // linear drag
};

struct SyncResult {
  EnergyTrace trace;  // energy of the difference of the two runs
  LineFit fit;
  bool exponential = false;
  double plateau = 0.0;  // residual difference energy, see estimate_plateau
};

struct MmsSample {
  double t = 0.0;
  double err_u = 0.0;
  double err_eta = 0.0;
};

struct MmsRun {
  std::size_t n = 0;
  double h = 0.0;
  double dt = 0.0;
  std::vector<MmsSample> history;  // includes t = 0
  L2Errors final_errors;
  L2Errors max_errors;
};

struct ConvergenceResult {
  std::vector<MmsRun> runs;
  double order_u_final = 0.0;
  double order_eta_final = 0.0;
  double order_u_max = 0.0;
  double order_eta_max = 0.0;
};

struct EnvelopeResult {
  DecayConstants constants;
  std::vector<std::pair<double, double>> samples;  // (t, bound on E(t))
};

/// Unforced run from a random unit-energy state.
DampingResult run_damping(const ExperimentConfig& cfg);
/// Two forced runs (seed, seed2) under sin(t) xy forcing; traces their difference.
SyncResult run_sync(const ExperimentConfig& cfg);
/// Manufactured-solution run on one n x n mesh, errors at every step.
MmsRun run_mms(const ExperimentConfig& cfg, std::size_t n);
ConvergenceResult run_converge(const ExperimentConfig& cfg);
EnvelopeResult run_envelope(const ExperimentConfig& cfg);

/// Mean energy over the final tenth of the trace.
double estimate_plateau(const EnergyTrace& trace);

/// Runs the configured experiment, writes CSV (and SVG) files into
/// cfg.output_dir and prints a summary. Returns the process exit code:
/// 0 success, 1 solver failure, 2 configuration error.
int execute(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace swdrag
