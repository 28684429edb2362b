#pragma once

#include "swdrag/damping.hpp"

namespace swdrag {

/// Inputs of the decay theorem. C_P is the Poincare-Friedrichs constant of
/// the divergence, which is not computed here and must be supplied.
struct DecayInputs {
  double poincare = 1.0;  // C_P
  double depth_min = 1.0;
  double depth_max = 1.0;
  double coriolis_max = 0.0;
  double beta = 0.1;
  double epsilon = 0.1;
  double growth = 1.0;  // M
  double initial_energy = 1.0;
  double domain_area = 1.0;
};

/// Concave envelope J(s) = scale * 2^{3 - 4/p} s^{2/p} of a power-law drag
/// (p > 2; for sublinear laws p is the conjugate exponent), or the linear
/// J(s) = scale * s of a linear drag.
class JFunction {
 public:
  static JFunction power(double exponent, double scale = 1.0);
  static JFunction linear(double slope);
  /// From a linear or linearized power law; the drag coefficient multiplies
  /// the power-law constant.
  static JFunction for_law(const DampingLaw& law);

  bool is_linear() const { return linear_; }
  double exponent() const { return p_; }
  double constant() const;  // J(s) = constant() * s^{2/p}, or slope when linear

  double operator()(double s) const;
  double inverse(double y) const;

 private:
  JFunction(bool linear, double p, double scale) : linear_(linear), p_(p), scale_(scale) {}

  bool linear_;
  double p_;
  double scale_;
};

struct DecayConstants {
  double period = 0.0;          // T
  double sigma = 0.0;           // |Sigma| = |Omega| T
  double d1 = 0.0;
  double d2 = 0.0;
  double d1_tilde = 0.0;
  double dj = 0.0;              // D_J
  double rate = 0.0;            // gamma, see envelope_rate
  double initial_energy = 0.0;  // S(0) = E(0)
};

/// Throws std::invalid_argument for non-positive inputs; E0 = 0 is allowed
/// and yields the zero envelope.
DecayConstants build_constants(const DecayInputs& in, const JFunction& j);

/// Coefficient gamma of S' + gamma S^{p/2} = 0 (or S' + gamma S = 0 for linear J).
double envelope_rate(const DecayConstants& k, const JFunction& j);

/// Solution S(tau) of S' + |Sigma| J^{-1}(S / D_J) = 0, S(0) = E(0), in
/// closed form through k.rate.
double decay_ode_solution(const DecayConstants& k, const JFunction& j, double tau);

/// Energy bound at time t: E(0) for t < T and S(t/T - 1) afterwards.
double envelope(const DecayConstants& k, const JFunction& j, double t);

/// Large-time exponent of S: -2/(p - 2) for superlinear power laws (p is
/// replaced by its conjugate for p < 2). Throws std::domain_error for the
/// linear law, whose envelope decays exponentially.
double asymptotic_exponent(const DampingLaw& law);
double asymptotic_exponent(double exponent);

}  // namespace swdrag
