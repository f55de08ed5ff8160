#pragma once

#include "cfl/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace cfl {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  /// Initial step; 0 picks (t1-t0)*1e-3 and lets the controller adapt.
  double h_init = 0.0;
  /// Steps below this magnitude raise StiffnessError.
  double h_floor = 1e-12;
  long max_steps = 20'000'000;
};

/// One accepted Dormand-Prince step with its quartic interpolant,
/// evaluable anywhere in [t0, t0+h].
struct OdeStep {
  double t0 = 0.0, h = 0.0;
  Eigen::VectorXd r1, r2, r3, r4, r5;

  Eigen::VectorXd eval(double t) const {
    double th = (t - t0) / h, th1 = 1.0 - th;
    return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
  }
};

struct OdeSolution {
  std::vector<double> times;            // accepted step endpoints, starts at t0
  std::vector<Eigen::VectorXd> states;  // states at those times
  std::vector<OdeStep> steps;           // dense output, one per accepted step

  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }
  const Eigen::VectorXd& final_state() const { return states.back(); }

  /// Dense-output evaluation; clamps t to the integration span.
  Eigen::VectorXd at(double t) const {
    if (steps.empty()) return states.front();
    bool fwd = steps.front().h > 0.0;
    double lo = t_begin(), hi = t_end();
    if (!fwd) std::swap(lo, hi);
    t = std::clamp(t, lo, hi);
    // Binary search over step left endpoints (monotone in either sign).
    std::size_t a = 0, b = steps.size() - 1;
    while (a < b) {
      std::size_t mid = (a + b + 1) / 2;
      double start = steps[mid].t0;
      if (fwd ? (start <= t) : (start >= t)) {
        a = mid;
      } else {
        b = mid - 1;
      }
    }
    return steps[a].eval(t);
  }
};

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
/// Returns true while the state is acceptable; a false endpoint triggers
/// dense-output bisection and ChartExitError at the crossing time.
using OdeGuard = std::function<bool(double, const Eigen::VectorXd&)>;

/// Adaptive Dormand-Prince 5(4) with dense output, integrating from t0
/// to t1 (either direction).
inline OdeSolution integrate_dopri5(const OdeRhs& f, double t0,
                                    const Eigen::VectorXd& y0, double t1,
                                    const OdeOptions& opt = {},
                                    const OdeGuard& guard = nullptr) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0,
                   d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0,
                   d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0,
                   d7 = 69997945.0 / 29380423.0;

  OdeSolution sol;
  sol.times.push_back(t0);
  sol.states.push_back(y0);
  if (t1 == t0) return sol;

  if (guard && !guard(t0, y0)) {
    throw ChartExitError("initial state violates the chart guard", t0);
  }

  double dir = t1 > t0 ? 1.0 : -1.0;
  double span = std::abs(t1 - t0);
  double h = opt.h_init > 0.0 ? opt.h_init : std::min(1e-3 * span, span);
  h = std::min(h, span);

  double t = t0;
  Eigen::VectorXd y = y0;
  Eigen::VectorXd k1 = f(t, y);
  long n_steps = 0;

  while (dir * (t1 - t) > 0.0) {
    if (++n_steps > opt.max_steps) {
      throw NonConvergenceError("ODE step budget exhausted");
    }
    h = std::min(h, std::abs(t1 - t));
    if (h < opt.h_floor) {
      throw StiffnessError("ODE step collapsed below " +
                           std::to_string(opt.h_floor) + " at t = " +
                           std::to_string(t));
    }
    double hs = dir * h;

    Eigen::VectorXd k2 = f(t + c2 * hs, y + hs * (a21 * k1));
    Eigen::VectorXd k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
    Eigen::VectorXd k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    Eigen::VectorXd k5 =
        f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Eigen::VectorXd k6 = f(
        t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Eigen::VectorXd ynew =
        y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    Eigen::VectorXd k7 = f(t + hs, ynew);

    Eigen::VectorXd errv =
        hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double q = errv[i] / sc;
      err += q * q;
    }
    err = std::sqrt(err / double(y.size()));

    if (err <= 1.0) {
      OdeStep step;
      step.t0 = t;
      step.h = hs;
      Eigen::VectorXd dy = ynew - y;
      step.r1 = y;
      step.r2 = dy;
      step.r3 = hs * k1 - dy;
      step.r4 = dy - hs * k7 - step.r3;
      step.r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

      double tnew = t + hs;
      if (guard && !guard(tnew, ynew)) {
        // Bisection on the dense interpolant for the crossing time.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
          double mid = 0.5 * (lo + hi);
          if (guard(t + mid * hs, step.eval(t + mid * hs))) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        double t_exit = t + lo * hs;
        sol.steps.push_back(step);
        sol.times.push_back(t_exit);
        sol.states.push_back(step.eval(t_exit));
        throw ChartExitError("trajectory left the chart at t = " +
                             std::to_string(t_exit), t_exit);
      }

      sol.steps.push_back(step);
      t = tnew;
      y = ynew;
      k1 = k7;
      sol.times.push_back(t);
      sol.states.push_back(y);
    }

    double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
  }
  return sol;
}

}  // namespace cfl
