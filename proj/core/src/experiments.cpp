#include "swdrag/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "swdrag/plot.hpp"

namespace swdrag {
namespace {

std::size_t step_count(double t_final, double dt) {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

// A window without enough samples (e.g. identical sync seeds) yields samples == 0.
LineFit fit_trace(const EnergyTrace& trace, const FitWindow& window, bool exponential) {
  try {
    return exponential ? fit_exponential_rate(trace, window) : fit_decay_exponent(trace, window);
  } catch (const std::invalid_argument&) {
    return LineFit{};
  }
}

bool is_exponential(const DampingLaw& law) { return law.is_affine(); }

void rethrow_with_step(const SolverError& e, std::size_t step) {
  throw SolverError("step " + std::to_string(step) + ": " + e.what(), e.residual());
}

}  // namespace

DampingResult run_damping(const ExperimentConfig& cfg) {
  cfg.validate();
  const Mesh mesh = Mesh::unit_square(cfg.n);
  const FunctionSpacePair space(mesh, cfg.k);
  const ModelParams params = cfg.model_params();
  const Operators ops = assemble_operators(space, params);
  TimeStepper stepper(space, params, ops, cfg.solver_config(mesh.h()));

  DampingResult result;
  result.exponential = is_exponential(params.damping);
  result.trace.metadata = {{"experiment", "damping"},
                           {"law", params.damping.to_string()},
                           {"n", std::to_string(cfg.n)},
                           {"k", std::to_string(cfg.k)},
                           {"seed", std::to_string(cfg.seed)}};

  State state = random_initial_state(space, params, ops, cfg.seed);
  result.trace.append({state.t, energy(state, ops, params), 0.0, 0.0});
  const std::size_t steps = step_count(cfg.t_final, stepper.config().dt);
  StepInfo info;
  for (std::size_t s = 0; s < steps; ++s) {
    try {
      state = stepper.step(state, &info);
    } catch (const SolverError& e) {
      rethrow_with_step(e, s + 1);
    }
    state.t = static_cast<double>(s + 1) * stepper.config().dt;
    result.trace.append({state.t, energy(state, ops, params), info.dissipation, info.forcing_power});
  }
  result.fit = fit_trace(result.trace, cfg.fit_window(), result.exponential);
  return result;
}

SyncResult run_sync(const ExperimentConfig& cfg) {
  cfg.validate();
  const Mesh mesh = Mesh::unit_square(cfg.n);
  const FunctionSpacePair space(mesh, cfg.k);
  const ModelParams params = cfg.model_params();
  const Operators ops = assemble_operators(space, params);
  ForcingTerms forcing;
  forcing.velocity = [&](double t) { return sync_forcing_functional(space, t, params); };
  TimeStepper first(space, params, ops, cfg.solver_config(mesh.h()), forcing);
  TimeStepper second(space, params, ops, cfg.solver_config(mesh.h()), forcing);

  SyncResult result;
  result.exponential = is_exponential(params.damping);
  result.trace.metadata = {{"experiment", "sync"},
                           {"law", params.damping.to_string()},
                           {"n", std::to_string(cfg.n)},
                           {"seeds", std::to_string(cfg.seed) + "," + std::to_string(cfg.seed2)}};

  State a = random_initial_state(space, params, ops, cfg.seed);
  State b = random_initial_state(space, params, ops, cfg.seed2);
  result.trace.append({0.0, energy(a.u - b.u, a.eta - b.eta, ops, params), 0.0, 0.0});
  const std::size_t steps = step_count(cfg.t_final, first.config().dt);
  StepInfo ia, ib;
  for (std::size_t s = 0; s < steps; ++s) {
    try {
      a = first.step(a, &ia);
      b = second.step(b, &ib);
    } catch (const SolverError& e) {
      rethrow_with_step(e, s + 1);
    }
    a.t = b.t = static_cast<double>(s + 1) * first.config().dt;
    const Eigen::VectorXd du = ia.u_mid - ib.u_mid;
    const double dissipation =
        params.damping.kind() == DampingKind::none
            ? 0.0
            : (damping_residual(space, params, ia.u_mid) - damping_residual(space, params, ib.u_mid))
                  .dot(du);
    result.trace.append({a.t, energy(a.u - b.u, a.eta - b.eta, ops, params), dissipation, 0.0});
  }
  result.fit = fit_trace(result.trace, cfg.fit_window(), result.exponential);
  result.plateau = estimate_plateau(result.trace);
  return result;
}

double estimate_plateau(const EnergyTrace& trace) {
  if (trace.samples.empty()) return 0.0;
  const std::size_t count = std::max<std::size_t>(1, trace.size() / 10);
  double sum = 0.0;
  for (std::size_t i = trace.size() - count; i < trace.size(); ++i) sum += trace.samples[i].energy;
  return sum / static_cast<double>(count);
}

MmsRun run_mms(const ExperimentConfig& cfg, std::size_t n) {
  const Mesh mesh = Mesh::unit_square(n);
  const FunctionSpacePair space(mesh, cfg.k);
  const ModelParams params = cfg.model_params();
  const Operators ops = assemble_operators(space, params);
  // Both loads come from one quadrature sweep; the stepper asks for them in turn.
  double cached_t = std::nan("");
  std::pair<Eigen::VectorXd, Eigen::VectorXd> cached;
  auto loads = [&](double t) -> const std::pair<Eigen::VectorXd, Eigen::VectorXd>& {
    if (t != cached_t) {
      cached = mms_forcing_functionals(space, t, params);
      cached_t = t;
    }
    return cached;
  };
  ForcingTerms forcing;
  forcing.velocity = [&](double t) { return loads(t).first; };
  forcing.pressure = [&](double t) { return loads(t).second; };
  TimeStepper stepper(space, params, ops, cfg.solver_config(mesh.h()), forcing);

  MmsRun run;
  run.n = n;
  run.h = mesh.h();
  run.dt = stepper.config().dt;
  auto record = [&](const State& s) {
    const double t = s.t;
    const L2Errors e = l2_errors(
        space, s, [t](const Point& x) { return mms::velocity(x, t); },
        [t](const Point& x) { return mms::elevation(x, t); });
    run.history.push_back({t, e.u, e.eta});
    run.final_errors = e;
    run.max_errors.u = std::max(run.max_errors.u, e.u);
    run.max_errors.eta = std::max(run.max_errors.eta, e.eta);
  };

  State state = mms_initial_state(space, 0.0);
  record(state);
  const std::size_t steps = step_count(cfg.t_final, run.dt);
  for (std::size_t s = 0; s < steps; ++s) {
    try {
      state = stepper.step(state);
    } catch (const SolverError& e) {
      rethrow_with_step(e, s + 1);
    }
    state.t = static_cast<double>(s + 1) * run.dt;
    record(state);
  }
  return run;
}

ConvergenceResult run_converge(const ExperimentConfig& cfg) {
  cfg.validate();
  ConvergenceResult result;
  std::vector<double> h, eu_f, ee_f, eu_m, ee_m;
  for (std::size_t n : cfg.meshes) {
    result.runs.push_back(run_mms(cfg, n));
    const MmsRun& r = result.runs.back();
    h.push_back(r.h);
    eu_f.push_back(r.final_errors.u);
    ee_f.push_back(r.final_errors.eta);
    eu_m.push_back(r.max_errors.u);
    ee_m.push_back(r.max_errors.eta);
  }
  result.order_u_final = fit_order(h, eu_f);
  result.order_eta_final = fit_order(h, ee_f);
  result.order_u_max = fit_order(h, eu_m);
  result.order_eta_max = fit_order(h, ee_m);
  return result;
}

EnvelopeResult run_envelope(const ExperimentConfig& cfg) {
  cfg.validate();
  const DampingLaw law = cfg.damping_law();
  const JFunction j = JFunction::for_law(law);
  DecayInputs in;
  in.poincare = cfg.poincare;
  in.depth_min = cfg.depth;
  in.depth_max = cfg.depth;
  in.coriolis_max = std::abs(cfg.coriolis);
  in.beta = cfg.beta;
  in.epsilon = cfg.epsilon;
  in.growth = cfg.growth > 0.0 ? cfg.growth : structural_constants(law).M;
  in.initial_energy = cfg.initial_energy;
  in.domain_area = 1.0;

  EnvelopeResult result;
  result.constants = build_constants(in, j);
  if (cfg.rate > 0.0) result.constants.rate = cfg.rate;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const double t = cfg.t_max * static_cast<double>(i) / static_cast<double>(cfg.samples - 1);
    result.samples.emplace_back(t, envelope(result.constants, j, t));
  }
  return result;
}

namespace {

std::filesystem::path output_path(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  return std::filesystem::path(cfg.output_dir) / name;
}

std::string law_tag(const ExperimentConfig& cfg) {
  std::string tag = cfg.law;
  std::replace(tag.begin(), tag.end(), ':', '_');
  return tag;
}

void write_trace_files(const ExperimentConfig& cfg, const EnergyTrace& trace,
                       const std::string& stem, const std::string& title) {
  std::ofstream csv(output_path(cfg, stem + ".csv"));
  write_trace_csv(csv, trace);
  if (!cfg.svg) return;
  PlotSeries s{cfg.law, {}, {}};
  for (const auto& p : trace.samples) {
    if (p.t <= 0.0) continue;
    s.x.push_back(p.t);
    s.y.push_back(p.energy);
  }
  PlotOptions opt;
  opt.title = title;
  opt.log_x = !is_exponential(cfg.damping_law());
  std::ofstream svg(output_path(cfg, stem + ".svg"));
  write_svg_plot(svg, {s}, opt);
}

void print_fit(std::ostream& log, const LineFit& fit, bool exponential) {
  if (fit.samples == 0) {
    log << "fit unavailable: too few samples in the fit window\n";
    return;
  }
  log << (exponential ? "exponential rate (d log E / dt): " : "decay exponent (d log E / d log t): ")
      << fit.slope << "  R^2=" << fit.r_squared << "  samples=" << fit.samples << '\n';
}

}  // namespace

int execute(const ExperimentConfig& cfg, std::ostream& log) {
  try {
    cfg.validate();
    log << std::setprecision(6);
    switch (cfg.experiment) {
      case Experiment::damping: {
        const DampingResult r = run_damping(cfg);
        const std::string stem = "damping_" + law_tag(cfg);
        write_trace_files(cfg, r.trace, stem, "Energy decay, " + cfg.law);
        log << "damping " << cfg.law << " n=" << cfg.n << " k=" << cfg.k << " T=" << cfg.t_final
            << " final E=" << r.trace.samples.back().energy << '\n';
        print_fit(log, r.fit, r.exponential);
        break;
      }
      case Experiment::sync: {
        const SyncResult r = run_sync(cfg);
        const std::string stem = "sync_" + law_tag(cfg);
        write_trace_files(cfg, r.trace, stem, "Difference energy, " + cfg.law);
        log << "sync " << cfg.law << " seeds=" << cfg.seed << "," << cfg.seed2
            << " final E=" << r.trace.samples.back().energy << " plateau=" << r.plateau << '\n';
        print_fit(log, r.fit, r.exponential);
        break;
      }
      case Experiment::converge: {
        const ConvergenceResult r = run_converge(cfg);
        std::ofstream csv(output_path(cfg, "converge_k" + std::to_string(cfg.k) + ".csv"));
        csv << "n,h,err_u_final,err_eta_final,err_u_max,err_eta_max\n" << std::setprecision(17);
        for (const auto& run : r.runs)
          csv << run.n << ',' << run.h << ',' << run.final_errors.u << ',' << run.final_errors.eta
              << ',' << run.max_errors.u << ',' << run.max_errors.eta << '\n';
        log << "converge k=" << cfg.k << " law=" << cfg.law << " T=" << cfg.t_final << '\n';
        for (const auto& run : r.runs)
          log << "  n=" << run.n << " err_u=" << run.final_errors.u
              << " err_eta=" << run.final_errors.eta << " max_u=" << run.max_errors.u
              << " max_eta=" << run.max_errors.eta << '\n';
        log << "order (final) u=" << r.order_u_final << " eta=" << r.order_eta_final << '\n';
        log << "order (max)   u=" << r.order_u_max << " eta=" << r.order_eta_max << '\n';
        break;
      }
      case Experiment::envelope: {
        const EnvelopeResult r = run_envelope(cfg);
        std::ofstream csv(output_path(cfg, "envelope_" + law_tag(cfg) + ".csv"));
        csv << "t,S\n" << std::setprecision(17);
        for (const auto& [t, s] : r.samples) csv << t << ',' << s << '\n';
        if (cfg.svg) {
          PlotSeries s{cfg.law, {}, {}};
          for (const auto& [t, v] : r.samples) {
            s.x.push_back(t);
            s.y.push_back(v);
          }
          PlotOptions opt;
          opt.title = "Decay envelope, " + cfg.law;
          opt.y_label = "S";
          std::ofstream svg(output_path(cfg, "envelope_" + law_tag(cfg) + ".svg"));
          write_svg_plot(svg, {s}, opt);
        }
        const auto& k = r.constants;
        log << "envelope " << cfg.law << " T=" << k.period << " |Sigma|=" << k.sigma
            << " D1=" << k.d1 << " D2=" << k.d2 << " D1~=" << k.d1_tilde << " D_J=" << k.dj
            << " gamma=" << k.rate << '\n';
        break;
      }
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    log << "solver failure: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    log << "config error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace swdrag
