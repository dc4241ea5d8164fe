#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "dicke/errors.hpp"
#include "dicke/types.hpp"

namespace dicke {

struct IntegrateOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::int64_t max_steps = 50'000'000;
};

// Adaptive embedded Runge-Kutta pair (Dormand-Prince 5(4) with FSAL) for
// autonomous linear flows y' = f(y) on Eigen vectors or matrices.  The error
// estimate is the max over entries of |err| / (atol + rtol * max(|y|,|y1|)).
// Throws StiffnessError when the accepted step collapses below the resolvable
// range, ConvergenceError when the step budget runs out.
template <class State, class Deriv>
State integrate_adaptive(Deriv&& f, State y, double t0, double t1,
                         const IntegrateOptions& opt = {}) {
  if (t1 <= t0) return y;
  const double span = t1 - t0;
  double t = t0;
  double dt = span / 16.0;

  State k1 = f(y);
  std::int64_t steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps)
      throw ConvergenceError("integrate_adaptive: step budget exhausted",
                             dt);
    const bool final_step = dt >= t1 - t;
    if (final_step) dt = t1 - t;
    if (!(dt > 1e-14 * std::max(1.0, std::abs(t))))
      throw StiffnessError(
          "integrate_adaptive: step size underflow; the generator is too "
          "stiff for this tolerance (try smaller rate ratios)");

    const State k2 = f(State(y + dt * (1.0 / 5.0) * k1));
    const State k3 = f(State(y + dt * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2)));
    const State k4 = f(State(y + dt * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 +
                                       (32.0 / 9.0) * k3)));
    const State k5 =
        f(State(y + dt * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2 +
                          (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4)));
    const State k6 =
        f(State(y + dt * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 +
                          (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4 -
                          (5103.0 / 18656.0) * k5)));
    const State y5 =
        y + dt * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 +
                  (125.0 / 192.0) * k4 - (2187.0 / 6784.0) * k5 +
                  (11.0 / 84.0) * k6);
    const State k7 = f(y5);
    const State err =
        dt * ((35.0 / 384.0 - 5179.0 / 57600.0) * k1 +
              (500.0 / 1113.0 - 7571.0 / 16695.0) * k3 +
              (125.0 / 192.0 - 393.0 / 640.0) * k4 +
              (-2187.0 / 6784.0 + 92097.0 / 339200.0) * k5 +
              (11.0 / 84.0 - 187.0 / 2100.0) * k6 - (1.0 / 40.0) * k7);

    const double scale_err =
        (err.array().abs() /
         (opt.abs_tol +
          opt.rel_tol * y.array().abs().max(y5.array().abs())))
            .maxCoeff();

    if (scale_err <= 1.0) {
      // Land exactly on t1 so the clamp never produces a denormal tail step.
      t = final_step ? t1 : t + dt;
      y = y5;
      k1 = k7;  // first-same-as-last
    }
    const double grow =
        scale_err > 0.0 ? 0.9 * std::pow(scale_err, -0.2) : 5.0;
    dt *= std::clamp(grow, 0.2, 5.0);
  }
  return y;
}

}  // namespace dicke
