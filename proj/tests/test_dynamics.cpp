#include "doctest.h"

#include "cfl/dynamics.hpp"
#include "cfl/models.hpp"

#include <cmath>

using namespace cfl;

namespace {


}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("t3 reeb lines are straight in the fibers") {
  auto model = make_model("t3");
  ChartPoint p0(kPi / 4.0, 0.0, 0.0);
  auto traj = integrate_reeb(*model, p0, 3.0, 1e-11);
  CHECK(traj.duration == doctest::Approx(3.0));
  for (double t : {0.5, 1.25, 2.8}) {
    auto p = traj.at(t);
    CHECK(p.coords[0] == doctest::Approx(kPi / 4.0));
    CHECK(p.coords[1] == doctest::Approx(t * std::cos(kPi / 4.0)).epsilon(1e-9));
    CHECK(p.coords[2] == doctest::Approx(t * std::sin(kPi / 4.0)).epsilon(1e-9));
  }
}

TEST_CASE("wrap_to_chart reduces periodic coordinates only") {
  auto t3 = make_model("t3");
  ChartPoint p(7.0, -1.0, 0.5);
  auto w = wrap_to_chart(*t3, p);
  CHECK(w.coords[0] == doctest::Approx(7.0 - kTwoPi));
  CHECK(w.coords[1] == doctest::Approx(kTwoPi - 1.0));
  CHECK(w.coords[2] == doctest::Approx(0.5));

  auto darboux = make_model("darboux");
  ChartPoint q(7.0, -1.0, 0.5);
  auto wq = wrap_to_chart(*darboux, q);
  CHECK(wq.coords[0] == 7.0);
  CHECK(wq.coords[1] == -1.0);
}

TEST_CASE("x2 flowlines on revolution models move only the fiber angle") {
  auto model = make_model("revolution", {{"c3", -0.2}});
  ChartPoint p0(1.0, 0.5, 0.25);
  auto traj = integrate_field(*model, FrameField::X2, p0, kTwoPi, 1e-10);
  auto p = traj.at(4.0);
  CHECK(p.coords[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.coords[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p.coords[2] == doctest::Approx(4.25).epsilon(1e-9));
}

TEST_CASE("katok meridian seed leaves the chart through the pole") {
  auto model = make_model("katok", {{"a", 0.5}});
  try {
    integrate_reeb(*model, ChartPoint(kPi / 2.0, 0.0, 0.0), 10.0, 1e-9);
    FAIL("expected ChartExitError");
  } catch (const ChartExitError& e) {
    CHECK(e.exit_time > 1.0);
    CHECK(e.exit_time < kPi);
  }
}

TEST_CASE("katok closed orbits integrate back to their seeds") {
  auto model = make_model("katok", {{"a", 0.5}});
  for (const auto& orbit : model->known_orbits()) {
    CAPTURE(orbit.label);
    auto traj = integrate_reeb(*model, orbit.initial_point, orbit.period, 1e-11);
    auto back = wrap_to_chart(*model, traj.final());
    for (int c = 0; c < 3; ++c) {
      double d = std::abs(back.coords[c] - orbit.initial_point.coords[c]);
      d = std::min(d, std::abs(d - kTwoPi));
      CHECK(d < 1e-7);
    }
  }
}

TEST_CASE("action equals elapsed time along reeb flow") {
  auto model = make_model("s3");
  auto traj = integrate_reeb(*model, ChartPoint(0.7, 0.0, 0.0), 5.0, 1e-11);
  CHECK(action(*model, traj) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("section return time of the hopf fiber is a full period") {
  auto model = make_model("s3");
  double t = section_return_time(*model, ChartPoint(0.7, 0.0, 0.0), Section{1, 0.0});
  CHECK(t == doctest::Approx(kTwoPi).epsilon(1e-8));
}

TEST_CASE("orbit finder refines a perturbed katok seed") {
  auto model = make_model("katok", {{"a", 0.3}});
  ChartPoint seed(kPi / 2.0 + 0.04, 0.0, kPi / 2.0 - 0.03);
  auto orbit = find_closed_orbit(*model, seed, Section{1, 0.0}, 1e-8);
  CHECK(orbit.period == doctest::Approx(kTwoPi / 1.3).epsilon(1e-8));
  CHECK(orbit.initial_point.coords[0] == doctest::Approx(kPi / 2.0).epsilon(1e-6));
  auto traj = integrate_reeb(*model, orbit.initial_point, orbit.period, 1e-11);
  CHECK(action(*model, traj) == doctest::Approx(orbit.period).epsilon(1e-9));
}

TEST_CASE("constant-k linearized flow matches rotation and shear forms") {
  auto quarter = integrate_linearized_constant(4.0, kPi / 2.0);
  Eigen::Matrix2d m = quarter.monodromy();
  CHECK((m + Eigen::Matrix2d::Identity()).norm() < 1e-8);

  auto shear = integrate_linearized_constant(0.0, kTwoPi);
  Eigen::Matrix2d s = shear.monodromy();
  CHECK(s(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(s(0, 1)) < 1e-9);
  CHECK(s(1, 0) == doctest::Approx(kTwoPi));
  CHECK(s(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("linearized flow along a t3 line reproduces the constant-k shear") {
  auto model = make_model("t3");
  auto traj = integrate_reeb(*model, ChartPoint(0.0, 0.0, 0.0), kTwoPi, 1e-11);
  auto path = integrate_linearized(*model, traj);
  Eigen::Matrix2d expected;
  expected << 1.0, 0.0, kTwoPi, 1.0;
  CHECK((path.monodromy() - expected).norm() < 1e-8);
  Eigen::Matrix2d mid = path.at(kPi);
  CHECK(mid(1, 0) == doctest::Approx(kPi).epsilon(1e-8));
}

TEST_CASE("particular solutions follow the matrix path") {
  auto path = integrate_linearized_constant(1.0, kTwoPi / 3.0, 0.3, -0.4);
  Eigen::Vector2d v = path.particular(1.0);
  CHECK(v[0] == doctest::Approx(0.3 * std::cos(1.0) + 0.4 * std::sin(1.0)).epsilon(1e-8));
  CHECK(v[1] == doctest::Approx(0.3 * std::sin(1.0) - 0.4 * std::cos(1.0)).epsilon(1e-8));
}

TEST_CASE("katok short orbit return map is a rotation by the period") {
  auto model = make_model("katok", {{"a", 0.5}});
  auto orbit = model->known_orbits()[0];
  auto traj = integrate_reeb(*model, orbit.initial_point, orbit.period, 1e-11);
  auto path = integrate_linearized(*model, traj);
  double T = orbit.period;
  Eigen::Matrix2d expected;
  expected << std::cos(T), -std::sin(T), std::sin(T), std::cos(T);
  CHECK((path.monodromy() - expected).norm() < 1e-7);
}

TEST_CASE("toponogov bound is sharp on the round sphere") {
  RevolutionModel round(0.0);
  auto rep = toponogov_check(round, 5);
  CHECK(rep.pass);
  CHECK(rep.l_min == doctest::Approx(kTwoPi).epsilon(1e-7));
  CHECK(rep.bound == doctest::Approx(kTwoPi).epsilon(1e-7));
  CHECK(std::abs(rep.slack) < 1e-6);
  CHECK(rep.candidates.size() >= 2);
}

TEST_CASE("toponogov bound has positive slack off the round case") {
  RevolutionModel oblate(-0.2);
  auto rep = toponogov_check(oblate, 7);
  CHECK(rep.pass);
  CHECK(rep.l_min == doctest::Approx(kTwoPi * 0.8).epsilon(1e-6));
  CHECK(rep.k_min == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(rep.bound == doctest::Approx(kTwoPi / std::sqrt(0.5)).epsilon(1e-6));
  CHECK(rep.slack > 0.5);
}

}  // TEST_SUITE("dynamics")
