#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "swdrag/mesh.hpp"

namespace swdrag {

enum class DampingKind { none, linear, power, power_linearized };

/// Pointwise bottom-drag law g(v).
///
///   linear            C v
///   power             C |v|^{p-2} v
///   power_linearized  C |v|^{p-2} v for |v| <= 1, C v beyond
///
/// `none` is g = 0 and is only meant for conservation checks.
class DampingLaw {
 public:
  static DampingLaw none();
  static DampingLaw linear(double coefficient);
  static DampingLaw power(double exponent, double coefficient);
  static DampingLaw power_linearized(double exponent, double coefficient);

  /// Parses "none", "linear", "power:p" or "power_lin:p".
  static DampingLaw parse(std::string_view spec, double coefficient);

  DampingKind kind() const { return kind_; }
  double exponent() const { return p_; }
  double coefficient() const { return c_; }
  /// True when g is affine in v, so Newton converges in one step.
  bool is_affine() const;
  std::string to_string() const;

  Point eval(const Point& v) const;
  /// Derivative of eval. For p < 2 the derivative blows up at the origin;
  /// there it is evaluated at |v| = 1e-8 instead.
  Eigen::Matrix2d jacobian(const Point& v) const;

 private:
  DampingLaw(DampingKind kind, double p, double c) : kind_(kind), p_(p), c_(c) {}

  DampingKind kind_;
  double p_;
  double c_;
};

/// Constants of the growth and coercivity assumptions used by the decay
/// estimates: linear growth constant M, g* = max |g| on the unit circle, and
/// the envelope J(s) <= c0 s^alpha.
struct StructuralConstants {
  double M = 0.0;
  double g_star = 0.0;
  double alpha = 0.0;
  double c0 = 0.0;
  /// Linear law: the J machinery reduces to exponential decay.
  bool exponential = false;
};

/// Throws std::domain_error for laws without linear growth at infinity
/// (pure power laws with p != 2) and for `none`.
StructuralConstants structural_constants(const DampingLaw& law);

}  // namespace swdrag
