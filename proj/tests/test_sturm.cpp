#include "doctest.h"

#include "cfl/dynamics.hpp"
#include "cfl/models.hpp"
#include "cfl/ode.hpp"
#include "cfl/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace cfl;

namespace {

// Flat toy model with K = y, so X2 = d/dy moves K and the oscillation
// hypothesis X2(K) = 0 genuinely fails along every Reeb line.
class TiltedCurvatureModel : public ContactModel {
 public:
  TiltedCurvatureModel() {
    name_ = "tilted";
    chart_ = {CoordInterval{}, CoordInterval{}, CoordInterval{}};
    sample_ = {{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
  }

  Eigen::Vector3d field(FrameField f, const ChartPoint&) const override {
    switch (f) {
      case FrameField::R: return {0.0, 0.0, 1.0};
      case FrameField::X1: return {1.0, 0.0, 0.0};
      case FrameField::X2: return {0.0, 1.0, 0.0};
    }
    return Eigen::Vector3d::Zero();
  }

  double scalar(FrameScalar s, const ChartPoint& p) const override {
    return s == FrameScalar::K ? p.coords[1] : 0.0;
  }

  Eigen::Vector3d contact_form_components(const ChartPoint&) const override {
    return {0.0, 0.0, 1.0};
  }
};

OdeSolution oscillator_solution(double t1) {
  OdeRhs rhs = [](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd dy(2);
    dy << y[1], -(2.5 + 1.5 * std::sin(t)) * y[0];
    return dy;
  };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  Eigen::VectorXd y0(2);
  y0 << 0.0, 1.0;
  return integrate_dopri5(rhs, 0.0, y0, t1, opt);
}

}  // namespace

TEST_SUITE("sturm") {

TEST_CASE("jacobi residual is small along a katok reeb line") {
  auto model = make_model("katok", {{"a", 0.5}});
  ChartPoint seed(kPi / 2.0, 0.0, 2.0);
  auto traj = integrate_reeb(*model, seed, 6.0 * kPi, 1e-12);
  double res = jacobi_residual(*model, traj);
  CHECK(res < 1e-7);
}

TEST_CASE("jacobi residual vanishes when i is constant or zero") {
  auto darboux = make_model("darboux");
  ChartPoint d0(0.3, 0.5, 0.0);
  auto dtraj = integrate_reeb(*darboux, d0, 2.0, 1e-12);
  CHECK(jacobi_residual(*darboux, dtraj) == doctest::Approx(0.0));

  auto t3 = make_model("t3");
  ChartPoint t0(0.0, 0.0, 0.0);
  auto ttraj = integrate_reeb(*t3, t0, kTwoPi, 1e-12);
  CHECK(jacobi_residual(*t3, ttraj) == doctest::Approx(0.0));
}

TEST_CASE("jacobi residual rejects lines where x2 moves k") {
  TiltedCurvatureModel model;
  ChartPoint seed(0.0, 0.5, 0.0);
  auto traj = integrate_reeb(model, seed, 1.0, 1e-10);
  CHECK_THROWS_AS(jacobi_residual(model, traj), HypothesisError);
}

TEST_CASE("katok zero gaps are pi") {
  auto model = make_model("katok", {{"a", 0.5}});
  ChartPoint seed(kPi / 2.0, 0.0, 2.0);
  auto traj = integrate_reeb(*model, seed, 6.0 * kPi, 1e-12);
  auto rep = zero_gaps(*model, traj, {0.0, 6.0 * kPi});
  CHECK(rep.pass);
  CHECK(rep.violations.empty());
  CHECK(rep.zeros.size() == 6);
  REQUIRE(rep.gaps.size() == 5);
  for (double g : rep.gaps) CHECK(g == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(rep.inf_k == doctest::Approx(1.0));
  CHECK(rep.sup_k == doctest::Approx(1.0));
  CHECK(rep.bound_upper == doctest::Approx(kTwoPi));
  CHECK(rep.bound_lower_per_pair == doctest::Approx(kPi));
}

TEST_CASE("zero gaps rejects identically vanishing i") {
  auto t3 = make_model("t3");
  ChartPoint t0(0.0, 0.0, 0.0);
  auto traj = integrate_reeb(*t3, t0, kTwoPi, 1e-11);
  CHECK_THROWS_AS(zero_gaps(*t3, traj, {0.0, kTwoPi}), IdenticallyZeroError);
}

TEST_CASE("oscillation report on a driven oscillator") {
  auto sol = oscillator_solution(40.0);
  auto I_of_t = [&](double t) { return sol.at(t)[0]; };
  auto K_of_t = [](double t) { return 2.5 + 1.5 * std::sin(t); };
  auto rep = oscillation_report(I_of_t, K_of_t, {0.0, 40.0});

  CHECK(rep.pass);
  CHECK(rep.violations.empty());
  CHECK(rep.zeros.size() == 20);
  CHECK(rep.zeros.front() == doctest::Approx(0.0));
  CHECK(rep.zeros.back() == doctest::Approx(39.196683800973).epsilon(1e-8));
  CHECK(rep.inf_k == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.sup_k == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(rep.bound_upper == doctest::Approx(kTwoPi).epsilon(1e-6));
  CHECK(rep.bound_lower_per_pair == doctest::Approx(kPi / 2.0).epsilon(1e-6));

  REQUIRE(rep.gaps.size() == 19);
  double gap_min = *std::min_element(rep.gaps.begin(), rep.gaps.end());
  double gap_max = *std::max_element(rep.gaps.begin(), rep.gaps.end());
  CHECK(gap_min == doctest::Approx(1.663312843605).epsilon(1e-8));
  CHECK(gap_max == doctest::Approx(2.871921428325).epsilon(1e-8));
  CHECK(gap_max < rep.bound_upper);
  CHECK(rep.zeros.back() - rep.zeros.front() >
        double(rep.zeros.size() - 2) * rep.bound_lower_per_pair);

  CHECK(std::is_sorted(rep.zeros.begin(), rep.zeros.end()));
  for (size_t i = 0; i < rep.gaps.size(); ++i) {
    CHECK(rep.gaps[i] == doctest::Approx(rep.zeros[i + 1] - rep.zeros[i]));
  }
}

TEST_CASE("oscillation report validates its window and grid") {
  auto I = [](double t) { return std::sin(t); };
  auto K = [](double) { return 1.0; };
  CHECK_THROWS_AS(oscillation_report(I, K, {1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(oscillation_report(I, K, {2.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(oscillation_report(I, K, {0.0, kTwoPi}, 8), ParameterError);
}

TEST_CASE("sturm comparison certifies interleaving for larger potential") {
  std::vector<double> q4(64, 4.0), q1(64, 1.0);
  std::vector<double> zeros = {0.0, kPi};
  CHECK(sturm_compare(q4, q1, zeros));
}

TEST_CASE("sturm comparison fails between fake zeros") {
  std::vector<double> q4(64, 4.0), q1(64, 1.0);
  CHECK_FALSE(sturm_compare(q4, q1, {0.0, 0.5}));
}

TEST_CASE("sturm comparison rejects bad hypotheses and inputs") {
  std::vector<double> q4(64, 4.0), q1(64, 1.0);
  std::vector<double> zeros = {0.0, kPi};
  CHECK_THROWS_AS(sturm_compare(q1, q1, zeros), HypothesisError);
  CHECK_THROWS_AS(sturm_compare(q1, q4, zeros), HypothesisError);
  CHECK_THROWS_AS(sturm_compare(q4, q1, {1.0}), ParameterError);
  CHECK_THROWS_AS(sturm_compare(q4, q1, {1.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(sturm_compare({4.0}, {1.0}, zeros), ParameterError);
  CHECK_THROWS_AS(sturm_compare(q4, std::vector<double>(32, 1.0), zeros),
                  ParameterError);
}

TEST_CASE("hyperbolic growth matches cosh for cosh data") {
  CHECK(hyperbolic_growth(-1.0, 1.0, 0.0, 5.0) ==
        doctest::Approx(std::cosh(5.0)).epsilon(1e-6));
  CHECK(hyperbolic_growth(-4.0, 1.0, 0.0, 3.0) ==
        doctest::Approx(std::cosh(6.0)).epsilon(1e-6));
}

TEST_CASE("hyperbolic growth of a decaying mode stays bounded") {
  double g = hyperbolic_growth(-1.0, 1.0, -1.0, 30.0);
  CHECK(g == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(g <= 1.0);
}

TEST_CASE("hyperbolic growth validates its inputs") {
  CHECK_THROWS_AS(hyperbolic_growth(0.0, 1.0, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(hyperbolic_growth(2.0, 1.0, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(hyperbolic_growth(-1.0, 0.0, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(hyperbolic_growth(-1.0, 1.0, 0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(hyperbolic_growth(-1.0, 1.0, 0.0, -2.0), ParameterError);
}

TEST_CASE("oscillator energy is conserved for constant k") {
  double K = 3.0;
  OdeRhs rhs = [K](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd dy(2);
    dy << y[1], -K * y[0];
    return dy;
  };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  Eigen::VectorXd y0(2);
  y0 << 0.7, -0.2;
  auto sol = integrate_dopri5(rhs, 0.0, y0, 25.0, opt);
  double e0 = y0[1] * y0[1] + K * y0[0] * y0[0];
  for (int i = 0; i <= 50; ++i) {
    auto y = sol.at(25.0 * i / 50.0);
    double e = y[1] * y[1] + K * y[0] * y[0];
    CHECK(e == doctest::Approx(e0).epsilon(1e-9));
  }
}

}  // TEST_SUITE
