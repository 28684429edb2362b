#include "swdrag/decay_theory.hpp"

#include <cmath>
#include <stdexcept>

namespace swdrag {

JFunction JFunction::power(double exponent, double scale) {
  if (!(exponent > 2.0)) throw std::invalid_argument("JFunction::power needs p > 2");
  if (!(scale > 0.0)) throw std::invalid_argument("JFunction scale must be positive");
  return {false, exponent, scale};
}

JFunction JFunction::linear(double slope) {
  if (!(slope > 0.0)) throw std::invalid_argument("JFunction slope must be positive");
  return {true, 2.0, slope};
}

JFunction JFunction::for_law(const DampingLaw& law) {
  const StructuralConstants sc = structural_constants(law);
  if (sc.exponential) return linear(sc.c0);
  double p = law.exponent();
  if (p < 2.0) p = p / (p - 1.0);
  return power(p, law.coefficient());
}

double JFunction::constant() const {
  return linear_ ? scale_ : scale_ * std::pow(2.0, 3.0 - 4.0 / p_);
}

double JFunction::operator()(double s) const {
  if (s <= 0.0) return 0.0;
  return linear_ ? scale_ * s : constant() * std::pow(s, 2.0 / p_);
}

double JFunction::inverse(double y) const {
  if (y <= 0.0) return 0.0;
  return linear_ ? y / scale_ : std::pow(y / constant(), p_ / 2.0);
}

DecayConstants build_constants(const DecayInputs& in, const JFunction& j) {
  if (!(in.poincare > 0.0) || !(in.depth_min > 0.0) || !(in.depth_max >= in.depth_min) ||
      !(in.beta > 0.0) || !(in.epsilon > 0.0) || !(in.growth > 0.0) || !(in.domain_area > 0.0) ||
      in.coriolis_max < 0.0 || in.initial_energy < 0.0)
    throw std::invalid_argument("build_constants: inputs must be positive");

  const double cp = in.poincare;
  const double hs = in.depth_min;
  const double eps = in.epsilon;
  const double beta = in.beta;

  DecayConstants k;
  k.initial_energy = in.initial_energy;
  k.period = 2.0 * cp * std::sqrt(beta) / (eps * std::sqrt(hs));
  k.sigma = in.domain_area * k.period;
  const double bracket = (1.5 + in.coriolis_max * cp * cp / (beta * hs)) / hs;
  const double tail = cp * cp * in.depth_max * eps * eps / (beta * hs);
  k.d2 = 2.0 * bracket + 2.0 * tail;
  k.d1 = in.growth * k.d2;
  k.d1_tilde = k.period + k.d1;
  if (in.initial_energy > 0.0)
    k.dj = (1.0 + k.d1_tilde) * in.initial_energy / j(in.initial_energy / k.sigma) +
           k.d2 * k.sigma;
  k.rate = envelope_rate(k, j);
  return k;
}

double envelope_rate(const DecayConstants& k, const JFunction& j) {
  if (k.dj <= 0.0) return 0.0;
  if (j.is_linear()) return k.sigma / (j.constant() * k.dj);
  const double p = j.exponent();
  return k.sigma / std::pow(j.constant() * k.dj, p / 2.0);
}

double decay_ode_solution(const DecayConstants& k, const JFunction& j, double tau) {
  const double e0 = k.initial_energy;
  if (e0 <= 0.0) return 0.0;
  const double gamma = k.rate;
  if (j.is_linear()) return e0 * std::exp(-gamma * tau);
  const double p = j.exponent();
  const double base = std::pow(e0, 1.0 - p / 2.0) + (p / 2.0 - 1.0) * gamma * tau;
  return std::pow(base, -2.0 / (p - 2.0));
}

double envelope(const DecayConstants& k, const JFunction& j, double t) {
  if (t < 0.0) throw std::invalid_argument("envelope: negative time");
  if (k.initial_energy <= 0.0) return 0.0;
  if (t < k.period) return k.initial_energy;
  return decay_ode_solution(k, j, t / k.period - 1.0);
}

double asymptotic_exponent(double exponent) {
  if (!(exponent > 1.0) || exponent == 2.0)
    throw std::domain_error("asymptotic exponent needs a power law with p > 1, p != 2");
  const double p = exponent > 2.0 ? exponent : exponent / (exponent - 1.0);
  return -2.0 / (p - 2.0);
}

double asymptotic_exponent(const DampingLaw& law) {
  if (law.kind() == DampingKind::linear || law.kind() == DampingKind::none || law.exponent() == 2.0)
    throw std::domain_error("linear drag: energy decays exponentially, not algebraically");
  return asymptotic_exponent(law.exponent());
}

}  // namespace swdrag
