#include "cfl/toric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfl {

namespace {

constexpr double kAngularStep = 1e-3;

double dtheta(const ToricField& g, double t, double th1, double th2,
              int which) {
  double h = kAngularStep;
  auto at = [&](double s) {
    return which == 0 ? g(t, th1 + s, th2) : g(t, th1, th2 + s);
  };
  return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) /
         (12.0 * h);
}

}  // namespace

ToricProfile::ToricProfile(double a, std::function<double(double)> f,
                           std::function<double(double)> df,
                           std::function<double(double)> ddf)
    : a_(a), f_(std::move(f)), df_(std::move(df)), ddf_(std::move(ddf)) {
  if (!(a_ > 0.0)) throw ParameterError("profile needs a > 0");
  b_ = f_(0.0);
  if (!(b_ > 0.0)) throw ParameterError("profile needs f(0) > 0");
  if (std::abs(f_(a_)) > 1e-12) {
    throw ParameterError("profile needs f(a) = 0");
  }
  if (std::abs(df_(a_)) < 1e-12) {
    throw ParameterError("profile needs f'(a) != 0");
  }
  for (int i = 1; i < 8; ++i) {
    double t = a_ * double(i) / 8.0;
    if (!std::isfinite(df_(t)) || !std::isfinite(ddf_(t))) {
      throw ParameterError("profile derivatives must be finite on (0, a)");
    }
    if (df_(t) >= 0.0) {
      throw ParameterError("profile must be strictly decreasing");
    }
  }
}

ToricProfile ToricProfile::linear(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("linear profile needs a, b > 0");
  return ToricProfile(
      a, [a, b](double t) { return b * (1.0 - t / a); },
      [a, b](double) { return -b / a; }, [](double) { return 0.0; });
}

ToricProfile ToricProfile::parabolic(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ParameterError("parabolic profile needs a, b > 0");
  }
  return ToricProfile(
      a, [a, b](double t) { return b * (1.0 - (t / a) * (t / a)); },
      [a, b](double t) { return -2.0 * b * t / (a * a); },
      [a, b](double) { return -2.0 * b / (a * a); });
}

double ToricProfile::u(double t) const {
  double g = f_(t) - t * df_(t);
  if (!(g > 0.0)) throw DomainError("Reeb denominator f - t f' vanished");
  return kTwoPi / g;
}

double ToricProfile::du(double t) const {
  double ut = u(t);
  return ut * ut * t * ddf_(t) / kTwoPi;
}

TangentVector toric_reeb(const ToricProfile& profile, const ChartPoint& p) {
  double t = p.coords[0];
  if (!(t > 0.0) || !(t < profile.a())) {
    throw DomainError(
        "Reeb chart covers 0 < t < a; the boundary circles are exceptional "
        "orbits");
  }
  double ut = profile.u(t);
  TangentVector v;
  v.base = p;
  v.components = {0.0, -ut * profile.df(t), ut};
  return v;
}

std::array<double, 6> frame_pde_residual(
    const ToricProfile& profile, const std::array<ToricField, 3>& A,
    const std::array<ToricField, 3>& B,
    const std::vector<std::array<double, 3>>& sample_points) {
  if (sample_points.empty()) throw ParameterError("no sample points given");
  std::array<double, 6> worst{};

  for (const auto& s : sample_points) {
    double t = s[0], th1 = s[1], th2 = s[2];
    if (!(t > 0.0) || !(t < profile.a())) {
      throw DomainError("sample point outside the chart interval (0, a)");
    }
    double fp = profile.df(t), fpp = profile.ddf(t);
    double ut = profile.u(t), up = profile.du(t);
    double ufp_t = up * fp + ut * fpp;

    std::array<double, 3> Av, Bv, DA, DB;
    for (int i = 0; i < 3; ++i) {
      Av[i] = A[i](t, th1, th2);
      Bv[i] = B[i](t, th1, th2);
      DA[i] = ut * (fp * dtheta(A[i], t, th1, th2, 0) -
                    dtheta(A[i], t, th1, th2, 1));
      DB[i] = ut * (fp * dtheta(B[i], t, th1, th2, 0) -
                    dtheta(B[i], t, th1, th2, 1));
    }

    std::array<double, 6> r;
    r[0] = Bv[0] + DA[0];
    r[1] = Bv[1] - ufp_t * Av[0] + DA[1];
    r[2] = Bv[2] + up * Av[0] + DA[2];
    r[3] = Av[0] - DB[0];
    r[4] = Av[1] + ufp_t * Bv[0] - DB[1];
    r[5] = Av[2] - up * Bv[0] - DB[2];
    for (int i = 0; i < 6; ++i) worst[i] = std::max(worst[i], std::abs(r[i]));
  }
  return worst;
}

bool a1_independence_check(
    const ToricField& A1,
    const std::vector<std::array<double, 3>>& sample_points, double tol) {
  if (sample_points.empty()) throw ParameterError("no sample points given");
  double lo = 1e300, hi = -1e300;
  for (const auto& s : sample_points) {
    double v = A1(s[0], s[1], s[2]);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo > tol;
}

std::vector<ModeScanResult> mode_scan(const ToricProfile& profile, int k_max,
                                      const std::vector<double>& t_samples,
                                      double tol) {
  if (k_max < 1) throw ParameterError("mode scan needs k_max >= 1");
  double delta = profile.margin();
  std::vector<double> ts;
  for (double t : t_samples) {
    if (t >= delta && t <= profile.a() - delta) ts.push_back(t);
  }
  if (ts.empty()) {
    throw ParameterError("no t samples remain inside the scan margin");
  }

  std::vector<std::pair<int, int>> modes;
  for (int k1 = -k_max; k1 <= k_max; ++k1) {
    for (int k2 = -k_max; k2 <= k_max; ++k2) {
      modes.emplace_back(k1, k2);
    }
  }

  std::vector<ModeScanResult> out(modes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long mi = 0; mi < static_cast<long long>(modes.size()); ++mi) {
    ModeScanResult res;
    res.k1 = modes[mi].first;
    res.k2 = modes[mi].second;
    res.residuals.reserve(ts.size());
    for (double t : ts) {
      double lhs = profile.df(t) * res.k1 - res.k2;
      double rhs = 1.0 / profile.u(t);
      double r = std::abs(lhs * lhs - rhs * rhs);
      res.residuals.push_back(r);
      res.max_residual = std::max(res.max_residual, r);
    }
    res.admissible = res.max_residual < tol;
    out[mi] = std::move(res);
  }
  return out;
}

std::vector<ModeScanResult> mode_scan(const ToricProfile& profile, int k_max,
                                      int n_samples, double tol) {
  if (n_samples < 2) throw ParameterError("mode scan needs n_samples >= 2");
  double delta = profile.margin();
  std::vector<double> ts(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    ts[i] = delta + (profile.a() - 2.0 * delta) * double(i) / double(n_samples - 1);
  }
  return mode_scan(profile, k_max, ts, tol);
}

bool k1_locus_check(double a, double b, double tol) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("needs a, b > 0");
  double r = kPi * (a + b) / (2.0 * a * b);
  bool via_curvature = std::abs(16.0 * r * r - 1.0) < tol;
  bool via_locus = std::abs(kPi * (a + b) - a * b / 2.0) < tol * a * b;
  if (via_curvature != via_locus) {
    std::ostringstream msg;
    msg << "curvature test and locus test disagree at (a, b) = (" << a << ", "
        << b << ")";
    throw SelfCheckError(msg.str());
  }
  return via_curvature;
}

}  // namespace cfl
