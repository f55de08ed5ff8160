#include "doctest.h"

#include "cfl/models.hpp"
#include "cfl/sampling.hpp"

#include <cmath>
#include <set>

using namespace cfl;

namespace {


std::vector<ModelPtr> frame_models() {
  return {make_model("darboux"), make_model("t3"),     make_model("s3"),
          make_model("katok", {{"a", 0.4}}),
          make_model("revolution", {{"c3", -0.2}}),
          make_model("torus_bundle", {{"c", 0.7}})};
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("catalog names build with default parameters") {
  auto names = model_catalog();
  REQUIRE(names.size() == 7);
  std::set<std::string> expected = {"darboux", "t3",        "s3",       "katok",
                                    "revolution", "ellipsoid", "torus_bundle"};
  CHECK(std::set<std::string>(names.begin(), names.end()) == expected);
  for (const auto& name : names) {
    auto model = make_model(name);
    CHECK(model->name() == name);
  }
}

TEST_CASE("unknown names and bad parameters are rejected") {
  CHECK_THROWS_AS(make_model("moebius"), ParameterError);
  CHECK_THROWS_AS(make_model("katok", {{"a", 1.0}}), ParameterError);
  CHECK_THROWS_AS(make_model("katok", {{"a", -1.3}}), ParameterError);
  CHECK_THROWS_AS(make_model("revolution", {{"c3", 0.34}}), ParameterError);
  CHECK_THROWS_AS(make_model("ellipsoid", {{"a", -1.0}}), ParameterError);
  CHECK_THROWS_AS(make_model("ellipsoid", {{"a", 2.0}, {"b", 1.0}}), ParameterError);
  CHECK_THROWS_AS(make_model("torus_bundle", {{"c", 2.0}}), ParameterError);
  CHECK_THROWS_AS(make_model("torus_bundle", {{"l", -1.0}}), ParameterError);
  CHECK_THROWS_AS(make_model("t3", {{"a", 0.1}}), ParameterError);
}

TEST_CASE("parameters round-trip through the parameter map") {
  auto katok = make_model("katok", {{"a", 0.35}});
  CHECK(katok->parameters().at("a") == doctest::Approx(0.35));
  auto ell = make_model("ellipsoid", {{"a", 1.0}, {"b", 2.5}});
  CHECK(ell->parameters().at("b") == doctest::Approx(2.5));
  CHECK(make_model("katok")->parameters().at("a") == 0.0);
}

TEST_CASE("chart membership and require_inside") {
  auto katok = make_model("katok");
  CHECK(katok->contains(ChartPoint(kPi / 2.0, 0.0, 0.0)));
  CHECK_FALSE(katok->contains(ChartPoint(0.0, 0.0, 0.0)));
  CHECK_FALSE(katok->contains(ChartPoint(kPi, 0.0, 0.0)));
  CHECK_THROWS_AS(katok->require_inside(ChartPoint(kPi, 0.0, 0.0)), DomainError);
  auto darboux = make_model("darboux");
  CHECK(darboux->contains(ChartPoint(1e6, -1e6, 0.0)));
}

TEST_CASE("darboux frame in closed form") {
  auto model = make_model("darboux");
  ChartPoint p(0.3, -0.8, 1.7);
  auto s = evaluate_frame(*model, p);
  CHECK(s.R.components == Eigen::Vector3d(0.0, 0.0, 1.0));
  CHECK(s.X1.components == Eigen::Vector3d(1.0, 0.0, 0.8));
  CHECK(s.X2.components == Eigen::Vector3d(-1.7, 1.0, -0.8 * 1.7));
  CHECK(s.I == doctest::Approx(-0.8));
  CHECK(s.J == 0.0);
  CHECK(s.K == 0.0);
  CHECK_FALSE(model->constant_k().has_value());
}

TEST_CASE("t3 and s3 frames at a point") {
  auto t3 = make_model("t3");
  ChartPoint q(kPi / 2.0, 1.0, 2.0);
  auto s = evaluate_frame(*t3, q);
  CHECK(s.R.components.isApprox(Eigen::Vector3d(0.0, 0.0, 1.0), 1e-15));
  CHECK(s.X1.components.isApprox(Eigen::Vector3d(0.0, -1.0, 0.0), 1e-15));
  CHECK(s.X2.components == Eigen::Vector3d(1.0, 0.0, 0.0));
  CHECK(s.I == 0.0);
  CHECK(s.K == 0.0);

  auto s3 = make_model("s3");
  auto f = evaluate_frame(*s3, ChartPoint(0.7, 0.4, 0.4));
  CHECK(f.R.components == Eigen::Vector3d(0.0, 1.0, -1.0));
  CHECK(f.X1.components.isApprox(Eigen::Vector3d(1.0, 0.0, 0.0), 1e-15));
  CHECK(f.K == 4.0);
  CHECK(s3->constant_k() == 4.0);
}

TEST_CASE("katok scalars match their closed forms") {
  double a = 0.6;
  auto model = make_model("katok", {{"a", a}});
  ChartPoint p(1.1, 0.3, 2.4);
  double rho = 1.0 + a * std::sin(1.1) * std::sin(2.4);
  auto s = evaluate_frame(*model, p);
  CHECK(s.I == doctest::Approx(-1.5 * a * std::sin(1.1) * std::cos(2.4) / std::sqrt(rho)));
  CHECK(s.J == doctest::Approx(-1.5 * a * std::cos(1.1) / std::sqrt(rho)));
  CHECK(s.K == 1.0);
  CHECK(model->constant_k() == 1.0);
}

TEST_CASE("contact form pairs to 1 with R and annihilates X1, X2") {
  for (const auto& model : frame_models()) {
    CAPTURE(model->name());
    for (const auto& p : stratified_points(*model, 25, 7)) {
      auto s = evaluate_frame(*model, p);
      CHECK(evaluate_contact_form(*model, s.R) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(evaluate_contact_form(*model, s.X1)) < 1e-12);
      CHECK(std::abs(evaluate_contact_form(*model, s.X2)) < 1e-12);
    }
  }
}

TEST_CASE("frame matrices stay invertible over the sample box") {
  for (const auto& model : frame_models()) {
    CAPTURE(model->name());
    for (const auto& p : stratified_points(*model, 40, 11)) {
      auto s = evaluate_frame(*model, p);
      CHECK(std::abs(s.frame_matrix().determinant()) > 1e-6);
    }
  }
}

TEST_CASE("ellipsoid publishes only cover-level data") {
  auto model = make_model("ellipsoid", {{"a", 1.0}, {"b", 2.0}});
  CHECK_FALSE(model->has_frame_fields());
  ChartPoint p(0.5, 0.1, 0.2);
  CHECK_NOTHROW(model->field(FrameField::R, p));
  CHECK_THROWS_AS(model->field(FrameField::X1, p), ModelError);
  CHECK_THROWS_AS(model->scalar(FrameScalar::I, p), ModelError);
  CHECK(model->scalar(FrameScalar::K, p) == doctest::Approx(ellipsoid_K(1.0, 2.0)));
  CHECK(model->constant_k() == doctest::Approx(ellipsoid_K(1.0, 2.0)));
  Eigen::Vector3d r = model->field(FrameField::R, p);
  CHECK(evaluate_contact_form(*model, {p, r}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ellipsoid curvature constant") {
  CHECK(ellipsoid_K(kPi, kPi) == 16.0);
  double root2 = std::sqrt(2.0);
  CHECK(ellipsoid_K(1.0, root2) ==
        doctest::Approx(115.04854000364718).epsilon(1e-14));
  CHECK(ellipsoid_K(1.0, root2) ==
        doctest::Approx(2.0 * kPi * kPi * (1.0 + root2) * (1.0 + root2)));
  CHECK(ellipsoid_K(2.0, 3.0) == doctest::Approx(ellipsoid_K(3.0, 2.0)));
  CHECK_THROWS_AS(ellipsoid_K(0.0, 1.0), ParameterError);
}

TEST_CASE("known orbit tables") {
  auto katok = make_model("katok", {{"a", 0.5}});
  auto orbits = katok->known_orbits();
  REQUIRE(orbits.size() == 2);
  CHECK(orbits[0].label == "short");
  CHECK(orbits[0].period == doctest::Approx(kTwoPi / 1.5));
  CHECK(orbits[0].in_chart);
  CHECK(orbits[1].label == "long");
  CHECK(orbits[1].period == doctest::Approx(kTwoPi / 0.5));

  auto t3_orbits = make_model("t3")->known_orbits();
  REQUIRE(t3_orbits.size() == 1);
  CHECK(t3_orbits[0].label == "x_line");
  CHECK(t3_orbits[0].period == doctest::Approx(kTwoPi));

  auto s3_orbits = make_model("s3")->known_orbits();
  CHECK(s3_orbits[0].label == "hopf_fiber");
  CHECK(s3_orbits[0].period == doctest::Approx(kTwoPi));

  auto rev = make_model("revolution", {{"c3", -0.2}})->known_orbits();
  REQUIRE(rev.size() == 2);
  CHECK(rev[0].label == "equator");
  CHECK(rev[0].period == doctest::Approx(kTwoPi * 0.8));
  CHECK(rev[1].label == "meridian");
  CHECK(rev[1].period == doctest::Approx(kTwoPi));
  CHECK_FALSE(rev[1].in_chart);

  auto ell = make_model("ellipsoid", {{"a", 1.0}, {"b", 2.0}})->known_orbits();
  REQUIRE(ell.size() == 2);
  CHECK(ell[0].label == "gamma_plus");
  CHECK(ell[0].period == doctest::Approx(1.0));
  CHECK_FALSE(ell[0].in_chart);
  CHECK(ell[1].label == "gamma_minus");
  CHECK(ell[1].period == doctest::Approx(2.0));
}

TEST_CASE("torus bundle scalars are the constants of the family") {
  auto model = make_model("torus_bundle", {{"c", 0.9}, {"l", 3.0}});
  ChartPoint p(0.4, 0.2, 0.6);
  CHECK(model->scalar(FrameScalar::I, p) == doctest::Approx(0.9));
  CHECK(model->scalar(FrameScalar::J, p) == 0.0);
  CHECK(model->scalar(FrameScalar::K, p) == 0.0);
  CHECK(model->constant_k() == 0.0);
}

TEST_CASE("stratified sampling is deterministic and box-respecting") {
  auto model = make_model("katok", {{"a", 0.3}});
  auto pts1 = stratified_points(*model, 64, 42);
  auto pts2 = stratified_points(*model, 64, 42);
  auto pts3 = stratified_points(*model, 64, 43);
  REQUIRE(pts1.size() == 64);
  bool identical = true, moved = false;
  for (int i = 0; i < 64; ++i) {
    for (int c = 0; c < 3; ++c) {
      identical = identical && pts1[i].coords[c] == pts2[i].coords[c];
      moved = moved || pts1[i].coords[c] != pts3[i].coords[c];
    }
  }
  CHECK(identical);
  CHECK(moved);
  const auto& box = model->sample_box();
  for (const auto& p : pts1) {
    for (int c = 0; c < 3; ++c) {
      CHECK(p.coords[c] >= box[c][0]);
      CHECK(p.coords[c] <= box[c][1]);
    }
    CHECK(model->contains(p));
  }
}

TEST_CASE("stratified sampling covers coarse cells when count allows") {
  auto model = make_model("darboux");
  auto pts = stratified_points(*model, 27, 5);
  std::set<int> cells;
  for (const auto& p : pts) {
    int ix = std::min(2, static_cast<int>(p.coords[0] * 3.0));
    int iy = std::min(2, static_cast<int>(p.coords[1] * 3.0));
    int iz = std::min(2, static_cast<int>(p.coords[2] * 3.0));
    cells.insert(ix * 9 + iy * 3 + iz);
  }
  CHECK(cells.size() == 27);
}

}  // TEST_SUITE("models")
