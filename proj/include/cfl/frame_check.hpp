#pragma once

#include "cfl/calculus.hpp"
#include "cfl/dynamics.hpp"
#include "cfl/models.hpp"

#include <array>
#include <string>
#include <vector>

namespace cfl {

struct ResidualReport {
  std::string relation_id;
  int points_tested = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Residuals of the three bracket relations
///   [X2,R] = X1,  [X1,X2] = R + I X1 + J X2,  [R,X1] = K X2
/// over the sample points. Throws ModelError when the model publishes
/// no closed-form frame fields.
std::array<ResidualReport, 3> check_structure_equations(
    const ContactModel& model, const std::vector<ChartPoint>& points,
    const FDConfig& cfg = {}, double tolerance = 1e-5);

/// Residuals of the two differential consequences
///   R(I) = J,  I K + R(J) + X2(K) = 0.
std::array<ResidualReport, 2> check_jacobi_relations(
    const ContactModel& model, const std::vector<ChartPoint>& points,
    const FDConfig& cfg = {}, double tolerance = 1e-5);

/// Frame of the rescaled contact form k*lambda:
///   R/k, X1/k, X2, I, J/k, K/k^2.
FrameSample rescale_frame(const FrameSample& sample, double k);

/// Scalar transform under a degree-c covering: (I, c*J, c^2*K).
std::array<double, 3> covering_transform(double I, double J, double K, double c);

/// Checks K(t) = K(0) exp(-int_0^t I) along an X2 flowline. The
/// identity needs J and R(J) to vanish along the line; both are
/// verified first (PreconditionError beyond pre_tolerance).
ResidualReport check_landsberg_ode(const ContactModel& model,
                                   const Trajectory& x2_flowline,
                                   const FDConfig& cfg = {},
                                   double tolerance = 1e-8,
                                   double pre_tolerance = 1e-6);

}  // namespace cfl
