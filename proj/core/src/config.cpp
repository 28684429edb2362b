#include "swdrag/config.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace swdrag {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] != '-') {
      const auto x = std::stoull(v, &used);
      if (used == v.size()) return x;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
  if (name == "damping") return Experiment::damping;
  if (name == "sync") return Experiment::sync;
  if (name == "converge") return Experiment::converge;
  if (name == "envelope") return Experiment::envelope;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::damping: return "damping";
    case Experiment::sync: return "sync";
    case Experiment::converge: return "converge";
    case Experiment::envelope: return "envelope";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  if (e == Experiment::converge) {
    c.epsilon = 1.0;
    c.beta = 1.0;
    c.coriolis = 0.0;
    c.depth = 1.0;
    c.law = "linear";
    c.coefficient = 1.0;
    c.t_final = 10.0;
  } else if (e == Experiment::envelope) {
    c.law = "power_lin:3";
    c.coefficient = 1.0;
  }
  return c;
}

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k = {
      "n",        "k",         "dt",          "dt_factor", "T",          "epsilon",
      "beta",     "f",         "H",           "law",       "C",          "seed",
      "seed2",    "out",       "fit_lo",      "fit_hi",    "fit_floor",  "meshes",
      "newton_tol", "newton_max_iter", "solver", "svg",   "C_P",        "E0",
      "M",        "rate",      "t_max",       "samples"};
  return k;
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string v = trim(raw_value);
  if (key == "experiment") experiment = parse_experiment(v);
  else if (key == "n") n = to_unsigned(key, v);
  else if (key == "k") k = static_cast<int>(to_unsigned(key, v));
  else if (key == "dt") dt = to_double(key, v);
  else if (key == "dt_factor") dt_factor = to_double(key, v);
  else if (key == "T") t_final = to_double(key, v);
  else if (key == "epsilon") epsilon = to_double(key, v);
  else if (key == "beta") beta = to_double(key, v);
  else if (key == "f") coriolis = to_double(key, v);
  else if (key == "H") depth = to_double(key, v);
  else if (key == "law") law = v;
  else if (key == "C") coefficient = to_double(key, v);
  else if (key == "seed") seed = to_unsigned(key, v);
  else if (key == "seed2") seed2 = to_unsigned(key, v);
  else if (key == "out") output_dir = v;
  else if (key == "fit_lo") {
    fit.t_lo = to_double(key, v);
    fit_lo_given = true;
  } else if (key == "fit_hi") fit.t_hi = to_double(key, v);
  else if (key == "fit_floor") fit.energy_floor = to_double(key, v);
  else if (key == "meshes") {
    std::vector<std::size_t> list;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) list.push_back(to_unsigned(key, trim(item)));
    meshes = list;
  } else if (key == "newton_tol") newton_tol = to_double(key, v);
  else if (key == "newton_max_iter") newton_max_iter = static_cast<int>(to_unsigned(key, v));
  else if (key == "solver") {
    if (v == "direct") linear_solver = LinearSolverKind::direct;
    else if (v == "cg") linear_solver = LinearSolverKind::conjugate_gradient;
    else throw ConfigError("solver must be 'direct' or 'cg', got '" + v + "'");
  } else if (key == "svg") svg = to_bool(key, v);
  else if (key == "C_P") poincare = to_double(key, v);
  else if (key == "E0") initial_energy = to_double(key, v);
  else if (key == "M") growth = to_double(key, v);
  else if (key == "rate") rate = to_double(key, v);
  else if (key == "t_max") t_max = to_double(key, v);
  else if (key == "samples") samples = to_unsigned(key, v);
  else throw ConfigError("unknown configuration key '" + key + "'");
}

void ExperimentConfig::load(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void ExperimentConfig::validate() const {
  if (n == 0) throw ConfigError("n must be positive");
  if (k != 1 && k != 2) throw ConfigError("k must be 1 or 2");
  if (dt < 0.0 || !(dt_factor > 0.0)) throw ConfigError("time step must be positive");
  if (!(t_final > 0.0)) throw ConfigError("T must be positive");
  if (!(epsilon > 0.0) || !(beta > 0.0)) throw ConfigError("epsilon and beta must be positive");
  if (!(depth > 0.0)) throw ConfigError("H must be positive");
  if (!(fit.t_hi > fit.t_lo)) throw ConfigError("fit window must satisfy fit_lo < fit_hi");
  if (experiment == Experiment::converge && meshes.size() < 3)
    throw ConfigError("converge needs at least three meshes");
  if (experiment == Experiment::converge &&
      std::any_of(meshes.begin(), meshes.end(), [](std::size_t m) { return m == 0; }))
    throw ConfigError("mesh sizes must be positive");
  if (experiment == Experiment::envelope && (samples < 2 || !(t_max > 0.0)))
    throw ConfigError("envelope needs t_max > 0 and at least two samples");
  try {
    (void)damping_law();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

DampingLaw ExperimentConfig::damping_law() const { return DampingLaw::parse(law, coefficient); }

ModelParams ExperimentConfig::model_params() const {
  return ModelParams::constant(epsilon, beta, coriolis, depth, damping_law());
}

SolverConfig ExperimentConfig::solver_config(double h) const {
  SolverConfig s;
  s.dt = time_step(h);
  s.newton_tol = newton_tol;
  s.newton_max_iter = newton_max_iter;
  s.linear_solver = linear_solver;
  return s;
}

}  // namespace swdrag

namespace swdrag {

FitWindow ExperimentConfig::fit_window() const {
  FitWindow w = fit;
  if (!fit_lo_given && damping_law().is_affine()) w.t_lo = 0.0;
  return w;
}

}  // namespace swdrag
