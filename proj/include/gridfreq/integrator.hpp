#pragma once

#include <Eigen/Dense>

namespace gridfreq {

/// One classical 4th-order Runge-Kutta step of dx/dt = f(t, x).
/// f is any callable (double, const Eigen::VectorXd&) -> Eigen::VectorXd.
template <typename Derivative>
Eigen::VectorXd rk4_step(const Derivative& f, double t, const Eigen::VectorXd& x,
                         double dt) {
  const Eigen::VectorXd k1 = f(t, x);
  const Eigen::VectorXd k2 = f(t + 0.5 * dt, Eigen::VectorXd(x + 0.5 * dt * k1));
  const Eigen::VectorXd k3 = f(t + 0.5 * dt, Eigen::VectorXd(x + 0.5 * dt * k2));
  const Eigen::VectorXd k4 = f(t + dt, Eigen::VectorXd(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace gridfreq
