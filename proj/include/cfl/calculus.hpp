#pragma once

#include "cfl/models.hpp"

#include <functional>

namespace cfl {

/// Central-difference settings. Derivatives are evaluated at steps
/// h, h/2, ..., h/2^(levels-1); with richardson on, the refinement
/// table is extrapolated and the error estimate is the difference of
/// the last two table entries, otherwise the finest plain central
/// difference is returned with the difference of the last two levels.
struct FDConfig {
  double h = 1e-4;
  int refinement_levels = 3;
  bool richardson = true;
  /// Near chart boundaries the stencil is shrunk to fit, down to this
  /// floor; below it DomainError is raised.
  double h_min = 1e-7;

  void validate() const;
};

struct DerivativeResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double h_used = 0.0;
};

struct BracketResult {
  TangentVector vector;
  double error_estimate = 0.0;
};

using ScalarField = std::function<double(const ChartPoint&)>;
using VectorField = std::function<Eigen::Vector3d(const ChartPoint&)>;

/// Component functions of a named frame field / scalar, for feeding the
/// generic operators below.
VectorField frame_field_function(const ContactModel& model, FrameField f);
ScalarField frame_scalar_function(const ContactModel& model, FrameScalar s);

/// d/ds f(p + s dir) at s=0 by central differences along the straight
/// coordinate line. The generic building block of everything below.
DerivativeResult line_derivative(const ContactModel& model, const ScalarField& f,
                                 const ChartPoint& p, const Eigen::Vector3d& dir,
                                 const FDConfig& cfg = {});

/// V(s)(p) for a general vector field and scalar.
DerivativeResult directional_derivative(const ContactModel& model,
                                        const VectorField& V, const ScalarField& s,
                                        const ChartPoint& p,
                                        const FDConfig& cfg = {});

/// V(s)(p) for a named frame field and named scalar, e.g. R(I), X2(K).
DerivativeResult directional_derivative(const ContactModel& model, FrameField V,
                                        FrameScalar s, const ChartPoint& p,
                                        const FDConfig& cfg = {});

/// [V,W] at p via [V,W]^i = V(W^i) - W(V^i).
BracketResult lie_bracket(const ContactModel& model, const VectorField& V,
                          const VectorField& W, const ChartPoint& p,
                          const FDConfig& cfg = {});

/// Bracket of two named frame fields.
BracketResult lie_bracket(const ContactModel& model, FrameField V, FrameField W,
                          const ChartPoint& p, const FDConfig& cfg = {});

/// dlambda(v, w) at the common base point, using constant-component
/// extensions of v and w in chart coordinates (their bracket vanishes,
/// so dlambda = v(lambda(W)) - w(lambda(V))).
DerivativeResult dlambda(const ContactModel& model, const TangentVector& v,
                         const TangentVector& w, const FDConfig& cfg = {});

}  // namespace cfl
