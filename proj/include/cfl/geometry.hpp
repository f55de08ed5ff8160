#pragma once

#include "cfl/calculus.hpp"
#include "cfl/models.hpp"

#include <array>

namespace cfl {

/// Frame-coefficient table of the Levi-Civita connection: nabla[i][j]
/// holds the (R, X1, X2)-coefficients of nabla_{e_i} e_j, with the
/// frame ordered e_0 = R, e_1 = X1, e_2 = X2.
struct ConnectionTable {
  std::array<std::array<Eigen::Vector3d, 3>, 3> nabla;
};

/// Curvature data at one point. entries[p][k] holds the frame
/// coefficients of Riem(e_i, e_j) e_k for the pair p: 0 = (R,X1),
/// 1 = (R,X2), 2 = (X1,X2). sec[p] is the sectional curvature of the
/// corresponding plane. derivative_error carries the worst
/// finite-difference error estimate entering the table.
struct CurvatureSample {
  std::array<std::array<Eigen::Vector3d, 3>, 3> entries;
  std::array<double, 3> sec{};
  double derivative_error = 0.0;
};

/// The frame metric <v,w> = lambda(v) lambda(w) + dlambda(v, Jw), with
/// J rotating the contact-plane part: J(a X1 + b X2) = b X1 - a X2.
/// The frame {R, X1, X2} is orthonormal for it.
double metric(const ContactModel& model, const TangentVector& v,
              const TangentVector& w, const FDConfig& cfg = {});

/// Closed-form connection table in the frame scalars I, J, K.
ConnectionTable connection_table(const ContactModel& model, const ChartPoint& p,
                                 const FDConfig& cfg = {});

/// Closed-form curvature table; derivative scalars R(K), X1(K), X2(K),
/// X2(I), X1(J) come from the calculus module.
CurvatureSample curvature(const ContactModel& model, const ChartPoint& p,
                          const FDConfig& cfg = {});

/// First-principles Levi-Civita curvature: structure constants from
/// numerical brackets, Koszul coefficients, and nested differencing.
/// Verifies frame orthonormality first (SelfCheckError otherwise).
/// Exists purely as an independent cross-check of curvature().
CurvatureSample curvature_numeric_oracle(const ContactModel& model,
                                         const ChartPoint& p,
                                         const FDConfig& cfg = {});

}  // namespace cfl
