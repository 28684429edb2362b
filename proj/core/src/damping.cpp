#include "swdrag/damping.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swdrag {
namespace {

constexpr double kJacobianFloor = 1e-8;

Point power_value(double p, double c, const Point& v) {
  const double r = v.norm();
  if (r == 0.0) return Point::Zero();
  return c * std::pow(r, p - 2.0) * v;
}

Eigen::Matrix2d power_jacobian(double p, double c, const Point& v) {
  Point w = v;
  double r = w.norm();
  if (p == 2.0) return c * Eigen::Matrix2d::Identity();
  if (r == 0.0) {
    if (p > 2.0) return Eigen::Matrix2d::Zero();
    w = Point(kJacobianFloor, 0.0);
    r = kJacobianFloor;
  } else if (p < 2.0 && r < kJacobianFloor) {
    w *= kJacobianFloor / r;
    r = kJacobianFloor;
  }
  return c * (std::pow(r, p - 2.0) * Eigen::Matrix2d::Identity() +
              (p - 2.0) * std::pow(r, p - 4.0) * w * w.transpose());
}

void check_exponent(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("damping exponent must exceed 1");
}

void check_coefficient(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("damping coefficient must be positive");
}

}  // namespace

DampingLaw DampingLaw::none() { return {DampingKind::none, 2.0, 0.0}; }

DampingLaw DampingLaw::linear(double coefficient) {
  check_coefficient(coefficient);
  return {DampingKind::linear, 2.0, coefficient};
}

DampingLaw DampingLaw::power(double exponent, double coefficient) {
  check_exponent(exponent);
  check_coefficient(coefficient);
  return {DampingKind::power, exponent, coefficient};
}

DampingLaw DampingLaw::power_linearized(double exponent, double coefficient) {
  check_exponent(exponent);
  check_coefficient(coefficient);
  return {DampingKind::power_linearized, exponent, coefficient};
}

DampingLaw DampingLaw::parse(std::string_view spec, double coefficient) {
  if (spec == "none") return none();
  if (spec == "linear") return linear(coefficient);
  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view name = spec.substr(0, colon);
    const std::string tail(spec.substr(colon + 1));
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == tail.size() && used > 0) {
      if (name == "power") return power(p, coefficient);
      if (name == "power_lin") return power_linearized(p, coefficient);
    }
  }
  throw std::invalid_argument("unknown damping law '" + std::string(spec) +
                              "' (expected none, linear, power:p or power_lin:p)");
}

bool DampingLaw::is_affine() const {
  return kind_ == DampingKind::none || kind_ == DampingKind::linear ||
         (kind_ == DampingKind::power && p_ == 2.0);
}

std::string DampingLaw::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case DampingKind::none: return "none";
    case DampingKind::linear: os << "linear"; break;
    case DampingKind::power: os << "power:" << p_; break;
    case DampingKind::power_linearized: os << "power_lin:" << p_; break;
  }
  os << " C=" << c_;
  return os.str();
}

Point DampingLaw::eval(const Point& v) const {
  switch (kind_) {
    case DampingKind::none: return Point::Zero();
    case DampingKind::linear: return c_ * v;
    case DampingKind::power: return power_value(p_, c_, v);
    case DampingKind::power_linearized:
      return v.norm() <= 1.0 ? power_value(p_, c_, v) : Point(c_ * v);
  }
  return Point::Zero();
}

Eigen::Matrix2d DampingLaw::jacobian(const Point& v) const {
  switch (kind_) {
    case DampingKind::none: return Eigen::Matrix2d::Zero();
    case DampingKind::linear: return c_ * Eigen::Matrix2d::Identity();
    case DampingKind::power: return power_jacobian(p_, c_, v);
    case DampingKind::power_linearized:
      return v.norm() <= 1.0 ? power_jacobian(p_, c_, v)
                             : Eigen::Matrix2d(c_ * Eigen::Matrix2d::Identity());
  }
  return Eigen::Matrix2d::Zero();
}

StructuralConstants structural_constants(const DampingLaw& law) {
  const double c = law.coefficient();
  StructuralConstants k;
  switch (law.kind()) {
    case DampingKind::none:
      throw std::domain_error("structural constants undefined for g = 0");
    case DampingKind::power:
      if (law.exponent() != 2.0)
        throw std::domain_error("pure power law has no linear growth at infinity; use power_lin");
      [[fallthrough]];
    case DampingKind::linear:
      k.M = (1.0 + c * c) / c;
      k.g_star = c;
      k.alpha = 1.0;
      k.c0 = (1.0 + c * c) / c;
      k.exponential = true;
      return k;
    case DampingKind::power_linearized: {
      double p = law.exponent();
      if (p == 2.0) {
        k.exponential = true;
        k.alpha = 1.0;
        k.c0 = (1.0 + c * c) / c;
      } else {
        if (p < 2.0) p = p / (p - 1.0);  // conjugate exponent
        k.alpha = 2.0 / p;
        k.c0 = c * std::pow(2.0, 3.0 - 4.0 / p);
      }
      k.M = (1.0 + c * c) / c;
      k.g_star = c;
      return k;
    }
  }
  return k;
}

}  // namespace swdrag
