#pragma once

#include <Eigen/Core>

namespace swdrag {

/// Discrete velocity (momentum) and elevation coefficients at time t.
/// Boundary velocity coefficients are always zero.
struct State {
  double t = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd eta;
};

}  // namespace swdrag
