#pragma once

#include "cfl/core.hpp"

#include <array>
#include <functional>
#include <vector>

namespace cfl {

/// Boundary profile of a star-shaped toric domain: a smooth decreasing
/// f on [0, a] with f(0) = b > 0, f(a) = 0, f'(a) != 0, supplied in
/// closed form with analytic first and second derivatives.
class ToricProfile {
 public:
  ToricProfile(double a, std::function<double(double)> f,
               std::function<double(double)> df,
               std::function<double(double)> ddf);

  static ToricProfile linear(double a, double b);
  static ToricProfile parabolic(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double f(double t) const { return f_(t); }
  double df(double t) const { return df_(t); }
  double ddf(double t) const { return ddf_(t); }

  /// Reeb profile factor u(t) = 2 pi / (f - t f').
  double u(double t) const;
  /// du/dt = u^2 t f'' / (2 pi).
  double du(double t) const;

  /// Margin delta = 1e-3 a; scans stay inside [delta, a - delta].
  double margin() const { return 1e-3 * a_; }

 private:
  double a_, b_;
  std::function<double(double)> f_, df_, ddf_;
};

/// Reeb vector at p = (t, theta1, theta2): u(t)(-f'(t), 1) in the
/// angular directions. DomainError outside (0, a); the exceptional
/// orbits at t = 0 and t = a live in orbit descriptors, not here.
TangentVector toric_reeb(const ToricProfile& profile, const ChartPoint& p);

/// Candidate frame coefficient field on (0,a) x T^2.
using ToricField = std::function<double(double t, double th1, double th2)>;

/// Max absolute residual, over the sample points, of each of the six
/// first-order equations the frame coefficients must satisfy, with
/// D = u (f' d/dtheta1 - d/dtheta2):
///   B1 + D A1,     B2 - (u f')' A1 + D A2,   B3 + u' A1 + D A3,
///   A1 - D B1,     A2 + (u' f' + u f'') B1 - D B2,
///   A3 - u' B1 - D B3.
/// Angular derivatives of the candidates use fourth-order central
/// differences; profile derivatives are analytic.
std::array<double, 6> frame_pde_residual(
    const ToricProfile& profile, const std::array<ToricField, 3>& A,
    const std::array<ToricField, 3>& B,
    const std::vector<std::array<double, 3>>& sample_points);

/// True when A1 varies over the samples: a constant A1 forces the
/// degenerate (zero) candidate and is rejected.
bool a1_independence_check(const ToricField& A1,
                           const std::vector<std::array<double, 3>>& sample_points,
                           double tol = 1e-10);

/// One Fourier mode of the admissibility relation
/// (f'(t) k1 - k2)^2 = 1/u(t)^2.
struct ModeScanResult {
  int k1 = 0;
  int k2 = 0;
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool admissible = false;
};

/// Evaluates the mode relation for every |k1|, |k2| <= k_max on the
/// given interior t samples (filtered to [delta, a - delta]).
std::vector<ModeScanResult> mode_scan(const ToricProfile& profile, int k_max,
                                      const std::vector<double>& t_samples,
                                      double tol = 1e-10);

/// Same scan on a uniform interior grid of n_samples points.
std::vector<ModeScanResult> mode_scan(const ToricProfile& profile, int k_max,
                                      int n_samples = 200, double tol = 1e-10);

/// True iff the ellipsoid E(a, b) has constant sectional curvature 1,
/// checked through both equivalent statements: 16 (pi(a+b)/(2ab))^2 = 1
/// and pi(a+b) = ab/2. SelfCheckError if the two tests ever disagree.
bool k1_locus_check(double a, double b, double tol = 1e-12);

}  // namespace cfl
