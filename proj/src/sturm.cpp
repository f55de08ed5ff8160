#include "cfl/sturm.hpp"

#include "cfl/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cfl {

namespace {

double bisect_zero(const std::function<double(double)>& f, double a, double b,
                   double fa) {
  for (int iter = 0; iter < 80 && b - a > 1e-13 * std::max(1.0, std::abs(a));
       ++iter) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double jacobi_residual(const ContactModel& model, const Trajectory& traj,
                       const FDConfig& cfg, double hypothesis_tol) {
  double t0 = traj.times.front(), t1 = traj.times.back();
  if (!(t1 > t0)) throw ParameterError("trajectory window is empty");

  int n_check = 40;
  double worst_x2k = 0.0;
  for (int i = 0; i <= n_check; ++i) {
    double t = t0 + (t1 - t0) * double(i) / double(n_check);
    ChartPoint p = wrap_to_chart(model, traj.at(t));
    double d = directional_derivative(model, FrameField::X2, FrameScalar::K, p,
                                      cfg)
                   .value;
    worst_x2k = std::max(worst_x2k, std::abs(d));
  }
  if (worst_x2k > hypothesis_tol) {
    std::ostringstream msg;
    msg << "X2(K) reaches " << worst_x2k
        << " along the line; the oscillation ODE needs X2(K) = 0";
    throw HypothesisError(msg.str());
  }

  int n = 1024;
  double h = (t1 - t0) / double(n);
  std::vector<double> iv(n + 1), kv(n + 1);
  for (int i = 0; i <= n; ++i) {
    ChartPoint p = wrap_to_chart(model, traj.at(t0 + h * i));
    iv[i] = model.scalar(FrameScalar::I, p);
    kv[i] = model.scalar(FrameScalar::K, p);
  }

  double worst = 0.0;
  for (int i = 2; i <= n - 2; ++i) {
    double second = (-iv[i - 2] + 16.0 * iv[i - 1] - 30.0 * iv[i] +
                     16.0 * iv[i + 1] - iv[i + 2]) /
                    (12.0 * h * h);
    worst = std::max(worst, std::abs(second + kv[i] * iv[i]));
  }
  return worst;
}

OscillationReport oscillation_report(
    const std::function<double(double)>& I_of_t,
    const std::function<double(double)>& K_of_t, std::array<double, 2> window,
    int n_grid) {
  double t0 = window[0], t1 = window[1];
  if (!(t1 > t0)) throw ParameterError("window must have positive length");
  if (n_grid < 16) throw ParameterError("grid too coarse for zero detection");

  double h = (t1 - t0) / double(n_grid);
  std::vector<double> iv(n_grid + 1), kv(n_grid + 1);
  double max_abs_i = 0.0;
  for (int i = 0; i <= n_grid; ++i) {
    double t = t0 + h * i;
    iv[i] = I_of_t(t);
    kv[i] = K_of_t(t);
    max_abs_i = std::max(max_abs_i, std::abs(iv[i]));
  }
  if (max_abs_i < 1e-12) {
    throw IdenticallyZeroError(
        "I vanishes identically on the window; the zero set is not discrete");
  }

  OscillationReport rep;
  rep.inf_k = *std::min_element(kv.begin(), kv.end());
  rep.sup_k = *std::max_element(kv.begin(), kv.end());
  rep.bound_upper = rep.inf_k > 0.0
                        ? kTwoPi / std::sqrt(rep.inf_k)
                        : std::numeric_limits<double>::infinity();
  rep.bound_lower_per_pair =
      rep.sup_k > 0.0 ? kPi / std::sqrt(rep.sup_k) : 0.0;

  double zero_band = 1e-9 * max_abs_i;
  for (int i = 0; i < n_grid; ++i) {
    double fa = iv[i], fb = iv[i + 1];
    if (std::abs(fa) <= zero_band) {
      double t = t0 + h * i;
      if (rep.zeros.empty() || t - rep.zeros.back() > 10.0 * h) {
        rep.zeros.push_back(t);
      }
      continue;
    }
    if ((fa > 0.0) != (fb > 0.0)) {
      double z = bisect_zero(I_of_t, t0 + h * i, t0 + h * (i + 1), fa);
      if (rep.zeros.empty() || z - rep.zeros.back() > 10.0 * h) {
        rep.zeros.push_back(z);
      }
    }
  }

  for (size_t i = 0; i + 1 < rep.zeros.size(); ++i) {
    rep.gaps.push_back(rep.zeros[i + 1] - rep.zeros[i]);
  }

  if (rep.inf_k > 0.0) {
    for (size_t i = 0; i < rep.gaps.size(); ++i) {
      if (rep.gaps[i] >= rep.bound_upper) {
        std::ostringstream msg;
        msg << "gap " << i << " = " << rep.gaps[i]
            << " reaches the upper bound " << rep.bound_upper;
        rep.violations.push_back(msg.str());
      }
    }
  }
  size_t n = rep.zeros.size();
  if (n >= 3 && rep.sup_k > 0.0) {
    double span = rep.zeros.back() - rep.zeros.front();
    double needed = double(n - 2) * rep.bound_lower_per_pair;
    if (span <= needed) {
      std::ostringstream msg;
      msg << "cumulative span " << span << " violates the lower bound "
          << needed << " for " << n << " zeros";
      rep.violations.push_back(msg.str());
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

OscillationReport zero_gaps(const ContactModel& model, const Trajectory& traj,
                            std::array<double, 2> window) {
  auto I_of_t = [&](double t) {
    return model.scalar(FrameScalar::I, wrap_to_chart(model, traj.at(t)));
  };
  auto K_of_t = [&](double t) {
    return model.scalar(FrameScalar::K, wrap_to_chart(model, traj.at(t)));
  };
  return oscillation_report(I_of_t, K_of_t, window);
}

bool sturm_compare(const std::vector<double>& q1_samples,
                   const std::vector<double>& q2_samples,
                   const std::vector<double>& phi2_zeros) {
  if (q1_samples.size() != q2_samples.size() || q1_samples.size() < 2) {
    throw ParameterError("potential sample vectors must match in size (>= 2)");
  }
  if (phi2_zeros.size() < 2) {
    throw ParameterError("need at least two zeros of phi2");
  }
  if (!std::is_sorted(phi2_zeros.begin(), phi2_zeros.end())) {
    throw ParameterError("phi2 zeros must be increasing");
  }

  double max_excess = 0.0;
  for (size_t i = 0; i < q1_samples.size(); ++i) {
    double diff = q1_samples[i] - q2_samples[i];
    if (diff < -1e-12) {
      throw HypothesisError("q1 < q2 at a sample point; comparison needs q1 >= q2");
    }
    max_excess = std::max(max_excess, diff);
  }
  if (max_excess <= 1e-12) {
    throw HypothesisError("q1 coincides with q2; comparison needs q1 != q2");
  }

  double a = phi2_zeros.front(), b = phi2_zeros.back();
  double grid_h = (b - a) / double(q1_samples.size() - 1);
  auto q1 = [&](double t) {
    double s = (t - a) / grid_h;
    int i = std::clamp(int(std::floor(s)), 0, int(q1_samples.size()) - 2);
    double frac = s - i;
    return q1_samples[i] * (1.0 - frac) + q1_samples[i + 1] * frac;
  };

  for (size_t k = 0; k + 1 < phi2_zeros.size(); ++k) {
    double z0 = phi2_zeros[k], z1 = phi2_zeros[k + 1];
    OdeRhs rhs = [&](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
      Eigen::VectorXd dy(2);
      dy << y[1], -q1(t) * y[0];
      return dy;
    };
    OdeOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-13;
    Eigen::VectorXd y0(2);
    y0 << 0.0, 1.0;
    OdeSolution sol = integrate_dopri5(rhs, z0, y0, z1, opt);

    double margin = 1e-9 * (z1 - z0);
    bool found = false;
    int n_scan = 512;
    double prev = sol.at(z0 + margin)[0];
    for (int i = 1; i <= n_scan; ++i) {
      double t = z0 + margin + (z1 - z0 - 2.0 * margin) * double(i) / n_scan;
      double cur = sol.at(t)[0];
      if ((cur > 0.0) != (prev > 0.0) || cur == 0.0) {
        found = true;
        break;
      }
      prev = cur;
    }
    if (!found) return false;
  }
  return true;
}

double hyperbolic_growth(double K_negative, double I0, double J0, double T) {
  if (K_negative >= 0.0) {
    throw ParameterError("hyperbolic growth needs a negative constant K");
  }
  if (I0 == 0.0 && J0 == 0.0) {
    throw ParameterError("initial data must not be the zero solution");
  }
  if (!(T > 0.0)) throw ParameterError("time horizon must be positive");

  OdeRhs rhs = [K_negative](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd dy(2);
    dy << y[1], -K_negative * y[0];
    return dy;
  };
  OdeOptions opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-14;
  Eigen::VectorXd y0(2);
  y0 << I0, J0;
  OdeSolution sol = integrate_dopri5(rhs, 0.0, y0, T, opt);

  double peak = 0.0;
  int n_scan = 4096;
  for (int i = 0; i <= n_scan; ++i) {
    double t = T * double(i) / double(n_scan);
    peak = std::max(peak, std::abs(sol.at(t)[0]));
  }
  return peak / (std::abs(I0) + std::abs(J0));
}

}  // namespace cfl
