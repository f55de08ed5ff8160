#pragma once

#include "cfl/calculus.hpp"
#include "cfl/dynamics.hpp"
#include "cfl/models.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace cfl {

/// Zero set of I along a Reeb line, with the oscillation bounds implied
/// by the curvature range on the window.
struct OscillationReport {
  std::vector<double> zeros;  // strictly increasing
  std::vector<double> gaps;   // zeros[i+1] - zeros[i]
  double inf_k = 0.0;
  double sup_k = 0.0;
  double bound_upper = 0.0;          // 2 pi / sqrt(inf_k), when inf_k > 0
  double bound_lower_per_pair = 0.0; // pi / sqrt(sup_k)
  std::vector<std::string> violations;
  bool pass = false;
};

/// Max over the window of |Idotdot + K I| along the trajectory, with the
/// second derivative from 5-point differences on a dense grid. The
/// hypothesis X2(K) = 0 along the line is checked first
/// (HypothesisError when it fails).
double jacobi_residual(const ContactModel& model, const Trajectory& traj,
                       const FDConfig& cfg = {},
                       double hypothesis_tol = 1e-6);

/// Oscillation report for explicit functions of time on [window[0],
/// window[1]]: zeros by sign-change bisection, gap comparison against
/// 2 pi / sqrt(inf K), and the cumulative bound
/// zeros[n-1] - zeros[0] > (n-2) pi / sqrt(sup K).
OscillationReport oscillation_report(const std::function<double(double)>& I_of_t,
                                     const std::function<double(double)>& K_of_t,
                                     std::array<double, 2> window,
                                     int n_grid = 8192);

/// Oscillation report for I along a Reeb trajectory of the model.
/// IdenticallyZeroError when max|I| < 1e-12 on the window.
OscillationReport zero_gaps(const ContactModel& model, const Trajectory& traj,
                            std::array<double, 2> window);

/// Sturm comparison primitive: integrates ydotdot + q1 y = 0 from each
/// zero of phi2 and certifies a sign change strictly between that zero
/// and the next one. q1 and q2 are samples on the uniform grid spanning
/// [phi2_zeros.front(), phi2_zeros.back()]; requires q1 >= q2 pointwise
/// and q1 != q2 (HypothesisError otherwise). Returns true when a strict
/// interior zero is found in every consecutive pair.
bool sturm_compare(const std::vector<double>& q1_samples,
                   const std::vector<double>& q2_samples,
                   const std::vector<double>& phi2_zeros);

/// Integrates Idotdot = -K I with I(0) = I0, Idot(0) = J0 for constant
/// K < 0 and returns max|I| over [0, T] divided by |I0| + |J0|.
/// ParameterError when K_negative >= 0 or both initial values vanish.
double hyperbolic_growth(double K_negative, double I0, double J0, double T);

}  // namespace cfl
