#include "cfl/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cfl {

void FDConfig::validate() const {
  if (!(h > 0.0)) throw ParameterError("FDConfig.h must be positive");
  if (refinement_levels < 2) {
    throw ParameterError("FDConfig.refinement_levels must be at least 2");
  }
  if (!(h_min > 0.0)) throw ParameterError("FDConfig.h_min must be positive");
}

namespace {

/// Largest step (times 0.9 margin) for which p +- h dir stays strictly
/// inside every bounded coordinate interval.
double fit_step(const ContactModel& model, const ChartPoint& p,
                const Eigen::Vector3d& dir, const FDConfig& cfg) {
  model.require_inside(p);
  double h = cfg.h;
  const ChartBox& box = model.chart();
  for (int c = 0; c < 3; ++c) {
    if (box[c].kind != CoordInterval::kBounded) continue;
    double d = std::abs(dir[c]);
    if (d < 1e-300) continue;
    double room = std::min(p.coords[c] - box[c].lo, box[c].hi - p.coords[c]);
    double allowed = 0.9 * room / d;
    h = std::min(h, allowed);
  }
  if (h < cfg.h_min) {
    throw DomainError("finite-difference stencil cannot fit inside the chart of '" +
                      model.name() + "' (allowed step " + std::to_string(h) + ")");
  }
  return h;
}

ChartPoint shifted(const ChartPoint& p, const Eigen::Vector3d& dir, double s) {
  ChartPoint q = p;
  q.coords += s * dir;
  return q;
}

}  // namespace

DerivativeResult line_derivative(const ContactModel& model, const ScalarField& f,
                                 const ChartPoint& p, const Eigen::Vector3d& dir,
                                 const FDConfig& cfg) {
  cfg.validate();
  double h = fit_step(model, p, dir, cfg);

  int levels = cfg.refinement_levels;
  std::vector<double> central(levels);
  for (int j = 0; j < levels; ++j) {
    double hj = h / double(1 << j);
    central[j] = (f(shifted(p, dir, hj)) - f(shifted(p, dir, -hj))) / (2.0 * hj);
  }

  DerivativeResult res;
  res.h_used = h;
  if (!cfg.richardson) {
    res.value = central[levels - 1];
    res.error_estimate = std::abs(central[levels - 1] - central[levels - 2]);
    return res;
  }

  // Romberg-style table: column j cancels the h^(2j) error term.
  std::vector<double> row = central;
  double prev_diag = central[0];
  double diag = central[0];
  double pow4 = 1.0;
  for (int col = 1; col < levels; ++col) {
    pow4 *= 4.0;
    for (int i = 0; i + col < levels; ++i) {
      row[i] = (pow4 * row[i + 1] - row[i]) / (pow4 - 1.0);
    }
    prev_diag = diag;
    diag = row[0];
  }
  res.value = diag;
  res.error_estimate = std::abs(diag - prev_diag);
  return res;
}

VectorField frame_field_function(const ContactModel& model, FrameField f) {
  return [&model, f](const ChartPoint& p) { return model.field(f, p); };
}

ScalarField frame_scalar_function(const ContactModel& model, FrameScalar s) {
  return [&model, s](const ChartPoint& p) { return model.scalar(s, p); };
}

DerivativeResult directional_derivative(const ContactModel& model,
                                        const VectorField& V, const ScalarField& s,
                                        const ChartPoint& p, const FDConfig& cfg) {
  return line_derivative(model, s, p, V(p), cfg);
}

DerivativeResult directional_derivative(const ContactModel& model, FrameField V,
                                        FrameScalar s, const ChartPoint& p,
                                        const FDConfig& cfg) {
  return line_derivative(model, frame_scalar_function(model, s), p,
                         model.field(V, p), cfg);
}

BracketResult lie_bracket(const ContactModel& model, const VectorField& V,
                          const VectorField& W, const ChartPoint& p,
                          const FDConfig& cfg) {
  Eigen::Vector3d vp = V(p), wp = W(p);
  BracketResult res;
  res.vector.base = p;
  for (int i = 0; i < 3; ++i) {
    ScalarField wi = [&W, i](const ChartPoint& q) { return W(q)[i]; };
    ScalarField vi = [&V, i](const ChartPoint& q) { return V(q)[i]; };
    DerivativeResult dv = line_derivative(model, wi, p, vp, cfg);
    DerivativeResult dw = line_derivative(model, vi, p, wp, cfg);
    res.vector.components[i] = dv.value - dw.value;
    res.error_estimate =
        std::max(res.error_estimate, dv.error_estimate + dw.error_estimate);
  }
  return res;
}

BracketResult lie_bracket(const ContactModel& model, FrameField V, FrameField W,
                          const ChartPoint& p, const FDConfig& cfg) {
  return lie_bracket(model, frame_field_function(model, V),
                     frame_field_function(model, W), p, cfg);
}

DerivativeResult dlambda(const ContactModel& model, const TangentVector& v,
                         const TangentVector& w, const FDConfig& cfg) {
  if ((v.base.coords - w.base.coords).norm() > 1e-12 ||
      v.base.chart_id != w.base.chart_id) {
    throw ParameterError("dlambda arguments must share a base point");
  }
  Eigen::Vector3d vc = v.components, wc = w.components;
  ScalarField lam_w = [&model, wc](const ChartPoint& q) {
    return model.contact_form_components(q).dot(wc);
  };
  ScalarField lam_v = [&model, vc](const ChartPoint& q) {
    return model.contact_form_components(q).dot(vc);
  };
  DerivativeResult a = line_derivative(model, lam_w, v.base, vc, cfg);
  DerivativeResult b = line_derivative(model, lam_v, v.base, wc, cfg);
  DerivativeResult res;
  res.value = a.value - b.value;
  res.error_estimate = a.error_estimate + b.error_estimate;
  res.h_used = std::min(a.h_used, b.h_used);
  return res;
}

}  // namespace cfl
