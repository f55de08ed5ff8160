#pragma once

#include "cfl/core.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace cfl {

/// constant + sum_k cos_coef[k-1] cos(2 pi k theta / period)
///          + sum_k sin_coef[k-1] sin(2 pi k theta / period).
/// The mean over one period is exactly the constant term, so the
/// integral obstruction below needs no quadrature tolerance.
struct TrigPoly {
  double constant = 0.0;
  std::vector<double> cos_coef;
  std::vector<double> sin_coef;

  double eval(double theta, double period) const;
  double mean() const { return constant; }
};

/// Flat T^2-bundle data: the induced function I~ on the base circle of
/// length l.
struct MonodromyProblem {
  TrigPoly I_tilde;
  double l = kTwoPi;

  double I_at(double theta) const { return I_tilde.eval(theta, l); }
};

/// Phi(l) solving dPhi/dtheta = M(theta) Phi, Phi(0) = Id, with
/// M = [[0, -1], [1, -I~(theta)]].
Eigen::Matrix2d monodromy(const MonodromyProblem& problem, double tol = 1e-11);

struct DetIdentityReport {
  Eigen::Matrix2d phi;
  double det_phi = 0.0;
  double integral = 0.0;      // exact: l times the mean of I~
  double expected_det = 0.0;  // exp(-integral)
  double residual = 0.0;
  bool pass = false;
};

/// Liouville identity det Phi(l) = exp(-integral of I~).
DetIdentityReport det_identity_check(const MonodromyProblem& problem,
                                     double tol = 1e-8);

/// True iff the exact mean of I~ vanishes; in that case the monodromy
/// determinant is cross-checked against 1 (SelfCheckError on failure).
bool integral_obstruction(const MonodromyProblem& problem);

/// One of the six flat quotient types: the gluing matrix, its declared
/// order, and the deck transformation description of the quotient of
/// the standard flat T^3.
struct FlatQuotientDatum {
  char label = '?';  // 'a'..'f'
  std::array<std::array<long, 2>, 2> phi{};
  std::string declared_order;
  std::string deck_description;
  long trace = 0;
  long det = 0;
  int matrix_order = 0;  // minimal n with phi^n = Id; 0 when none exists
};

/// The six types with det, trace, and matrix orders verified in integer
/// arithmetic (SelfCheckError if any verification fails). Type (f) has
/// an infinite-order matrix; its "order 2" refers to the affine deck
/// structure, so matrix_order stays 0 there.
std::vector<FlatQuotientDatum> quotient_catalog();

}  // namespace cfl
