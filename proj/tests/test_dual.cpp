#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spindle/asymptotics.hpp"
#include "spindle/body.hpp"
#include "spindle/dual.hpp"
#include "spindle/errors.hpp"
#include "spindle/geom.hpp"
#include "spindle/hull.hpp"
#include "spindle/rng.hpp"

using namespace spindle;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("dual of a disc is the concentric complement disc") {
  auto dual = r_dual(ConvexBody::parse("disc:0.4"), 1.0);
  for (int i = 0; i < 512; ++i) {
    CHECK(dual.support(kTwoPi * i / 512) == doctest::Approx(0.6).epsilon(1e-14));
  }
  CHECK(dual.area() == doctest::Approx(kPi * 0.36).epsilon(1e-10));
}

TEST_CASE("a width-r body is its own dual") {
  auto cw = ConvexBody::parse("cw:1,0.03");
  auto dual = r_dual(cw, 1.0);
  for (int i = 0; i < 1024; ++i) {
    double t = kTwoPi * i / 1024;
    CHECK(std::abs(dual.support(t) - cw.support(t)) <= 1e-12);
  }
  CHECK(dual.area() == doctest::Approx(cw.area()).epsilon(1e-10));
  CHECK(dual.perimeter() == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("dual identities on the body/r matrix") {
  for (const char* spec : {"disc:0.4", "ellipse:0.6,0.5", "cw:1,0.03"}) {
    for (double r : {1.0, 1.5}) {
      auto rep = dual_identity_report(ConvexBody::parse(spec), r);
      CAPTURE(spec);
      CAPTURE(r);
      CHECK(rep.support_residual <= 1e-8);
      CHECK(rep.curvature_residual <= 1e-8);
      CHECK(rep.perimeter_residual <= 1e-8);
      CHECK(rep.area_residual <= 1e-8);
    }
  }
}

TEST_CASE("disc area identity in closed form") {
  // A(K*) = A - r Per + pi r^2 = pi(0.16 - 0.8 + 1) = 0.36 pi for disc:0.4, r=1
  auto dual = r_dual(ConvexBody::parse("disc:0.4"), 1.0);
  CHECK(dual.area() == doctest::Approx(0.36 * kPi).epsilon(1e-10));
}

TEST_CASE("double dual restores the body pointwise") {
  for (const char* spec : {"ellipse:0.6,0.5", "cw:1,0.03", "disc:0.4"}) {
    auto body = ConvexBody::parse(spec);
    auto dd = r_dual(r_dual(body, 1.0), 1.0);
    for (int i = 0; i < 1024; ++i) {
      double t = kTwoPi * i / 1024;
      CHECK(std::abs(dd.support(t) - body.support(t)) <= 1e-12);
    }
  }
}

TEST_CASE("infeasible dual radius") {
  CHECK_THROWS_WITH_AS(r_dual(ConvexBody::parse("ellipse:0.6,0.5"), 0.5),
                       doctest::Contains("DualInfeasible"), Error);
}

TEST_CASE("disc intersection of one and two centers") {
  std::vector<Point2> one{{0.2, -0.1}};
  auto di1 = disc_intersection(one, 1.0);
  CHECK(di1.f0() == 1);
  CHECK(di1.area() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(di1.perimeter() == doctest::Approx(kTwoPi).epsilon(1e-12));

  for (double d : {0.3, 0.8, 1.6}) {
    std::vector<Point2> two{{-d / 2, 0.0}, {d / 2, 0.0}};
    auto di = disc_intersection(two, 1.0);
    CHECK(di.f0() == 2);
    CHECK(di.area() == doctest::Approx(circle_lens_area(d, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("disc intersection vertices, duality count, and area by Monte Carlo") {
  auto dual = r_dual(ConvexBody::parse("ellipse:0.6,0.5"), 1.0);
  RngStream rng(99);
  auto centers = dual.sample_uniform(rng, 20);
  auto di = disc_intersection(centers, 1.0);
  auto hull = r_hull(centers, 1.0);
  CHECK(di.f0() == f0(hull));

  // every boundary vertex is at distance <= r from every center
  for (auto v : di.vertices) {
    for (auto c : centers) {
      CHECK(dist(v, c) <= 1.0 + 1e-9);
    }
  }

  // area cross-check by hit counting in a bounding box
  std::size_t hits = 0, total = 400000;
  RngStream mc(100);
  for (std::size_t i = 0; i < total; ++i) {
    Point2 p{mc.uniform(-1.5, 1.5), mc.uniform(-1.5, 1.5)};
    if (di.contains(p, 0.0)) ++hits;
  }
  double mc_area = 9.0 * static_cast<double>(hits) / static_cast<double>(total);
  double se = 9.0 * std::sqrt(0.25 / static_cast<double>(total));
  CHECK(std::abs(mc_area - di.area()) <= 4.0 * se);
}

TEST_CASE("disc intersection rejects spread-out centers") {
  std::vector<Point2> wide{{-1.2, 0.0}, {1.2, 0.0}, {0.0, 1.2}};
  CHECK_THROWS_WITH_AS(disc_intersection(wide, 1.0), doctest::Contains("NotRFeasible"),
                       Error);
}

TEST_CASE("circumscribed sample basics") {
  auto body = ConvexBody::parse("disc:0.4");
  RngStream rng(4321);
  auto s = circumscribed_sample(body, 1.0, 1, rng);
  CHECK(s.f0 == 1);
  CHECK(s.area_diff == doctest::Approx(kPi * (1.0 - 0.16)).epsilon(1e-9));
  CHECK(s.perim_diff == doctest::Approx(kTwoPi - kTwoPi * 0.4).epsilon(1e-9));
}

TEST_CASE("nested circumscribed samples shrink monotonically") {
  auto body = ConvexBody::parse("disc:0.4");
  auto dual = r_dual(body, 1.0);
  RngStream rng(555);
  auto pts = dual.sample_uniform(rng, 40);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= pts.size(); n += 4) {
    auto di = disc_intersection(std::span<const Point2>(pts.data(), n), 1.0);
    double diff = di.area() - body.area();
    CHECK(diff >= -1e-12);
    CHECK(diff <= prev + 1e-12);
    prev = diff;
  }
}

TEST_CASE("circumscribed samples always contain the body") {
  for (const char* spec : {"cw:1,0.03", "disc:0.4"}) {
    auto body = ConvexBody::parse(spec);
    auto dual = r_dual(body, 1.0);
    RngStream rng(777);
    double early = 0.0, late = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      RngStream sub(777, 1, rep);
      auto s = circumscribed_sample(body, dual, 1.0, 8, sub);
      CHECK(s.area_diff >= -1e-12);
      CHECK(s.perim_diff >= -1e-12);
      early += s.area_diff;
    }
    for (int rep = 0; rep < 20; ++rep) {
      RngStream sub(777, 2, rep);
      late += circumscribed_sample(body, dual, 1.0, 2000, sub).area_diff;
    }
    CHECK(late / 20.0 < early / 100.0);
  }
}

TEST_CASE("constant-width remark identity at several exponents") {
  struct Case {
    const char* spec;
    double r;
  };
  for (auto [spec, r] : {Case{"cw:1,0.03", 1.0}, Case{"cw:1.5,0.05", 1.5}}) {
    auto body = ConvexBody::parse(spec);
    REQUIRE(body.is_constant_width());
    for (double p : {1.0 / 3.0, 2.0 / 3.0, 2.0}) {
      double lhs = boundary_integral(body, r, p);
      double rhs = std::pow(r, 1.0 - 2.0 * p) * boundary_integral(body, r, 1.0 - p);
      CHECK(std::abs(lhs - rhs) <= 1e-6);
    }
  }
}
