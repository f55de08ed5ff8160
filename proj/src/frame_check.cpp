#include "cfl/frame_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfl {

namespace {

ResidualReport summarize(const std::string& id,
                         const std::vector<double>& residuals, double tolerance) {
  ResidualReport rep;
  rep.relation_id = id;
  rep.points_tested = static_cast<int>(residuals.size());
  rep.max_residual = residuals.empty()
                         ? 0.0
                         : *std::max_element(residuals.begin(), residuals.end());
  rep.mean_residual =
      residuals.empty()
          ? 0.0
          : std::accumulate(residuals.begin(), residuals.end(), 0.0) /
                double(residuals.size());
  rep.tolerance = tolerance;
  rep.pass = rep.max_residual <= tolerance;
  return rep;
}

void require_frame_fields(const ContactModel& model) {
  if (!model.has_frame_fields()) {
    throw ModelError("model '" + model.name() +
                     "' publishes no closed-form frame fields");
  }
}

}  // namespace

std::array<ResidualReport, 3> check_structure_equations(
    const ContactModel& model, const std::vector<ChartPoint>& points,
    const FDConfig& cfg, double tolerance) {
  require_frame_fields(model);
  int n = static_cast<int>(points.size());
  std::vector<double> r1(n), r2(n), r3(n);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const ChartPoint& p = points[i];
    FrameSample fs = evaluate_frame(model, p);
    Eigen::Vector3d b1 =
        lie_bracket(model, FrameField::X2, FrameField::R, p, cfg).vector.components;
    Eigen::Vector3d b2 =
        lie_bracket(model, FrameField::X1, FrameField::X2, p, cfg).vector.components;
    Eigen::Vector3d b3 =
        lie_bracket(model, FrameField::R, FrameField::X1, p, cfg).vector.components;
    r1[i] = (b1 - fs.X1.components).norm();
    r2[i] = (b2 - fs.R.components - fs.I * fs.X1.components -
             fs.J * fs.X2.components)
                .norm();
    r3[i] = (b3 - fs.K * fs.X2.components).norm();
  }

  return {summarize("bracket_x2_r", r1, tolerance),
          summarize("bracket_x1_x2", r2, tolerance),
          summarize("bracket_r_x1", r3, tolerance)};
}

std::array<ResidualReport, 2> check_jacobi_relations(
    const ContactModel& model, const std::vector<ChartPoint>& points,
    const FDConfig& cfg, double tolerance) {
  require_frame_fields(model);
  int n = static_cast<int>(points.size());
  std::vector<double> r1(n), r2(n);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const ChartPoint& p = points[i];
    double I = model.scalar(FrameScalar::I, p);
    double J = model.scalar(FrameScalar::J, p);
    double K = model.scalar(FrameScalar::K, p);
    double rI =
        directional_derivative(model, FrameField::R, FrameScalar::I, p, cfg).value;
    double rJ =
        directional_derivative(model, FrameField::R, FrameScalar::J, p, cfg).value;
    double x2K =
        directional_derivative(model, FrameField::X2, FrameScalar::K, p, cfg).value;
    r1[i] = std::abs(rI - J);
    r2[i] = std::abs(I * K + rJ + x2K);
  }

  return {summarize("jacobi_ri_j", r1, tolerance),
          summarize("jacobi_ik_rj_x2k", r2, tolerance)};
}

FrameSample rescale_frame(const FrameSample& sample, double k) {
  if (!(k > 0.0)) throw ParameterError("rescale factor must be positive");
  FrameSample out = sample;
  out.R.components = sample.R.components / k;
  out.X1.components = sample.X1.components / k;
  out.X2.components = sample.X2.components;
  out.I = sample.I;
  out.J = sample.J / k;
  out.K = sample.K / (k * k);
  return out;
}

std::array<double, 3> covering_transform(double I, double J, double K, double c) {
  if (!(c > 0.0)) throw ParameterError("covering degree must be positive");
  return {I, c * J, c * c * K};
}

ResidualReport check_landsberg_ode(const ContactModel& model,
                                   const Trajectory& x2_flowline,
                                   const FDConfig& cfg, double tolerance,
                                   double pre_tolerance) {
  require_frame_fields(model);
  double T = x2_flowline.duration;
  int n = 2000;  // even, Simpson pairsable
  double h = T / n;

  std::vector<ChartPoint> pts(n + 1);
  for (int i = 0; i <= n; ++i) pts[i] = x2_flowline.at(i * h);

  double max_J = 0.0, max_RJ = 0.0;
  int probe_stride = 10;
  for (int i = 0; i <= n; ++i) {
    max_J = std::max(max_J, std::abs(model.scalar(FrameScalar::J, pts[i])));
    if (i % probe_stride == 0) {
      double rj = directional_derivative(model, FrameField::R, FrameScalar::J,
                                         pts[i], cfg)
                      .value;
      max_RJ = std::max(max_RJ, std::abs(rj));
    }
  }
  if (max_J > pre_tolerance || max_RJ > pre_tolerance) {
    throw PreconditionError(
        "Landsberg identity needs J and R(J) to vanish along the flowline; "
        "max|J| = " + std::to_string(max_J) +
        ", max|R(J)| = " + std::to_string(max_RJ));
  }

  std::vector<double> I_vals(n + 1);
  for (int i = 0; i <= n; ++i) {
    I_vals[i] = model.scalar(FrameScalar::I, pts[i]);
  }
  double K0 = model.scalar(FrameScalar::K, pts[0]);

  // Cumulative Simpson of I at the even nodes.
  std::vector<double> residuals;
  residuals.reserve(n / 2 + 1);
  double integral = 0.0;
  residuals.push_back(std::abs(model.scalar(FrameScalar::K, pts[0]) - K0));
  for (int i = 2; i <= n; i += 2) {
    integral += h / 3.0 * (I_vals[i - 2] + 4.0 * I_vals[i - 1] + I_vals[i]);
    double K_pred = K0 * std::exp(-integral);
    double K_act = model.scalar(FrameScalar::K, pts[i]);
    residuals.push_back(std::abs(K_act - K_pred));
  }
  return summarize("landsberg_ode", residuals, tolerance);
}

}  // namespace cfl
