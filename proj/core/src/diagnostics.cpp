#include "swdrag/diagnostics.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace swdrag {

double energy(const Eigen::VectorXd& u, const Eigen::VectorXd& eta, const Operators& ops,
              const ModelParams& params) {
  return 0.5 * u.dot(ops.mass * u) + 0.5 * params.pressure_coupling() * eta.dot(ops.pressure_mass * eta);
}

double energy(const State& state, const Operators& ops, const ModelParams& params) {
  return energy(state.u, state.eta, ops, params);
}

double energy_by_quadrature(const FunctionSpacePair& space, const ModelParams& params,
                            const State& state) {
  const TriangleQuadrature quad = TriangleQuadrature::of_degree(2 * space.order() + 3);
  double kinetic = 0.0;
  double potential = 0.0;
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const CellMap& map = space.cell_map(c);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point xhat(quad.x(q), quad.y(q));
      const double jw = quad.weights[q] * std::abs(map.det);
      const Point u = space.eval_velocity(state.u, c, xhat);
      const double eta = space.eval_pressure(state.eta, c, xhat);
      kinetic += jw * u.squaredNorm() / params.depth(map.to_physical(xhat));
      potential += jw * eta * eta;
    }
  }
  return 0.5 * kinetic + 0.5 * params.pressure_coupling() * potential;
}

L2Errors l2_errors(const FunctionSpacePair& space, const State& state, const VectorField& exact_u,
                   const ScalarField& exact_eta) {
  const TriangleQuadrature quad = TriangleQuadrature::of_degree(2 * space.order() + 3);
  double eu = 0.0;
  double eeta = 0.0;
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const CellMap& map = space.cell_map(c);
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Point xhat(quad.x(q), quad.y(q));
      const Point x = map.to_physical(xhat);
      const double jw = quad.weights[q] * std::abs(map.det);
      eu += jw * (space.eval_velocity(state.u, c, xhat) - exact_u(x)).squaredNorm();
      const double de = space.eval_pressure(state.eta, c, xhat) - exact_eta(x);
      eeta += jw * de * de;
    }
  }
  return {std::sqrt(eu), std::sqrt(eeta)};
}

void EnergyTrace::append(const TraceSample& s) {
  if (!samples.empty() && !(s.t > samples.back().t))
    throw std::invalid_argument("EnergyTrace: times must strictly increase");
  if (!(s.energy >= 0.0)) throw std::invalid_argument("EnergyTrace: negative or NaN energy");
  samples.push_back(s);
}

void write_trace_csv(std::ostream& os, const EnergyTrace& trace) {
  os << "t,E,dissipation,forcing_power\n";
  os << std::setprecision(17);
  for (const auto& s : trace.samples)
    os << s.t << ',' << s.energy << ',' << s.dissipation << ',' << s.forcing_power << '\n';
}

EnergyTrace read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,E,dissipation,forcing_power", 0) != 0)
    throw std::invalid_argument("trace CSV: missing or unexpected header");
  EnergyTrace trace;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    TraceSample s;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> s.t >> c1 >> s.energy >> c2 >> s.dissipation >> c3 >> s.forcing_power) ||
        c1 != ',' || c2 != ',' || c3 != ',')
      throw std::invalid_argument("trace CSV: malformed row at line " + std::to_string(lineno));
    trace.append(s);
  }
  return trace;
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares: need two or more paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.samples = x.size();
  return fit;
}

namespace {

LineFit fit_window(const EnergyTrace& trace, const FitWindow& window, bool log_time) {
  std::vector<double> x, y;
  for (const auto& s : trace.samples) {
    if (s.t < window.t_lo || s.t > window.t_hi) continue;
    if (!(s.energy > window.energy_floor) || s.energy <= 0.0) continue;
    if (log_time && s.t <= 0.0) continue;
    x.push_back(log_time ? std::log(s.t) : s.t);
    y.push_back(std::log(s.energy));
  }
  if (x.size() < 10)
    throw std::invalid_argument("fit window holds " + std::to_string(x.size()) +
                                " usable samples; at least 10 are required");
  return least_squares(x, y);
}

}  // namespace

LineFit fit_decay_exponent(const EnergyTrace& trace, const FitWindow& window) {
  return fit_window(trace, window, true);
}

LineFit fit_exponential_rate(const EnergyTrace& trace, const FitWindow& window) {
  return fit_window(trace, window, false);
}

double fit_order(const std::vector<double>& h, const std::vector<double>& errors) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < h.size() && i < errors.size(); ++i) {
    lx.push_back(std::log(h[i]));
    ly.push_back(std::log(errors[i]));
  }
  return least_squares(lx, ly).slope;
}

}  // namespace swdrag
