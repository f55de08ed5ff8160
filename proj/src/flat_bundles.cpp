#include "cfl/flat_bundles.hpp"

#include "cfl/ode.hpp"

#include <cmath>
#include <sstream>

namespace cfl {

namespace {

using IntMat = std::array<std::array<long, 2>, 2>;

IntMat mul(const IntMat& x, const IntMat& y) {
  IntMat r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    }
  }
  return r;
}

bool is_identity(const IntMat& m) {
  return m[0][0] == 1 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 1;
}

int matrix_order(const IntMat& m, int bound = 12) {
  IntMat p = m;
  for (int n = 1; n <= bound; ++n) {
    if (is_identity(p)) return n;
    p = mul(p, m);
  }
  return 0;
}

}  // namespace

double TrigPoly::eval(double theta, double period) const {
  if (!(period > 0.0)) throw ParameterError("period must be positive");
  double v = constant;
  double base = kTwoPi * theta / period;
  for (size_t k = 0; k < cos_coef.size(); ++k) {
    v += cos_coef[k] * std::cos(double(k + 1) * base);
  }
  for (size_t k = 0; k < sin_coef.size(); ++k) {
    v += sin_coef[k] * std::sin(double(k + 1) * base);
  }
  return v;
}

Eigen::Matrix2d monodromy(const MonodromyProblem& problem, double tol) {
  if (!(problem.l > 0.0)) throw ParameterError("base period must be positive");

  OdeRhs rhs = [&problem](double theta,
                          const Eigen::VectorXd& s) -> Eigen::VectorXd {
    double it = problem.I_at(theta);
    Eigen::VectorXd ds(4);
    ds << -s[2], -s[3], s[0] - it * s[2], s[1] - it * s[3];
    return ds;
  };
  OdeOptions opt;
  opt.rtol = tol;
  opt.atol = tol * 1e-3;
  Eigen::VectorXd s0(4);
  s0 << 1.0, 0.0, 0.0, 1.0;
  OdeSolution sol = integrate_dopri5(rhs, 0.0, s0, problem.l, opt);
  const Eigen::VectorXd& s = sol.final_state();
  Eigen::Matrix2d phi;
  phi << s[0], s[1], s[2], s[3];
  return phi;
}

DetIdentityReport det_identity_check(const MonodromyProblem& problem,
                                     double tol) {
  DetIdentityReport rep;
  rep.phi = monodromy(problem);
  rep.det_phi = rep.phi.determinant();
  rep.integral = problem.l * problem.I_tilde.mean();
  rep.expected_det = std::exp(-rep.integral);
  rep.residual = std::abs(rep.det_phi - rep.expected_det);
  rep.pass = rep.residual < tol;
  return rep;
}

bool integral_obstruction(const MonodromyProblem& problem) {
  bool vanishes = problem.I_tilde.mean() == 0.0;
  if (vanishes) {
    double det = monodromy(problem).determinant();
    if (std::abs(det - 1.0) >= 1e-8) {
      std::ostringstream msg;
      msg << "zero-mean I~ must give unimodular monodromy, got det = " << det;
      throw SelfCheckError(msg.str());
    }
  }
  return vanishes;
}

std::vector<FlatQuotientDatum> quotient_catalog() {
  std::vector<FlatQuotientDatum> out;
  auto add = [&out](char label, IntMat phi, std::string declared,
                    std::string deck, int expected_order) {
    FlatQuotientDatum d;
    d.label = label;
    d.phi = phi;
    d.declared_order = std::move(declared);
    d.deck_description = std::move(deck);
    d.trace = phi[0][0] + phi[1][1];
    d.det = phi[0][0] * phi[1][1] - phi[0][1] * phi[1][0];
    d.matrix_order = matrix_order(phi);
    if (d.det != 1) {
      throw SelfCheckError(std::string("gluing matrix (") + label +
                           ") is not unimodular");
    }
    if (d.matrix_order != expected_order) {
      std::ostringstream msg;
      msg << "gluing matrix (" << label << ") has order " << d.matrix_order
          << ", expected " << expected_order;
      throw SelfCheckError(msg.str());
    }
    out.push_back(std::move(d));
  };

  add('a', {{{1, 0}, {0, 1}}}, "1",
      "trivial bundle: the flat T^3 itself, no identification", 1);
  add('b', {{{-1, 0}, {0, -1}}}, "2",
      "quotient by (theta, y, z) -> (theta + pi, -y, -z)", 2);
  add('c', {{{0, -1}, {1, -1}}}, "3",
      "quotient by (theta, y, z) -> (theta + 2pi/3, R_{2pi/3}(y, z))", 3);
  add('d', {{{0, -1}, {1, 0}}}, "4",
      "quotient by (theta, y, z) -> (theta + pi/2, R_{pi/2}(y, z))", 4);
  add('e', {{{0, -1}, {1, 1}}}, "6",
      "quotient by (theta, y, z) -> (theta + pi/3, R_{pi/3}(y, z))", 6);
  add('f', {{{-1, 0}, {1, -1}}}, "affine order 2",
      "quotient by the Z2 x Z2 group generated by "
      "(theta, y, z) -> (theta + pi, -y, -z) and "
      "(theta, y, z) -> (-theta, y + pi, -z + pi)",
      0);
  return out;
}

}  // namespace cfl
