#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spindle/body.hpp"
#include "spindle/errors.hpp"
#include "spindle/hull.hpp"
#include "spindle/rng.hpp"

using namespace spindle;

namespace {
constexpr double kPi = std::numbers::pi;

bool same_polygon(const DiscPolygon& a, const DiscPolygon& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    if (!(a.vertices[i] == b.vertices[i])) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("two points make a spindle") {
  std::vector<Point2> pts{{0.0, 0.0}, {0.4, 0.0}};
  auto dp = r_hull(pts, 1.0);
  REQUIRE(f0(dp) == 2);
  CHECK(dp.edges().size() == 2);
  double half = 0.2;
  double seg = std::asin(half) - half * std::sqrt(1 - half * half);
  CHECK(dp.area() == doctest::Approx(2 * seg).epsilon(1e-12));
}

TEST_CASE("a point below the spindle bulge is absorbed") {
  // bulge height over the chord midpoint is 1 - sqrt(1 - 0.04) ~ 0.0202
  std::vector<Point2> pts{{0.0, 0.0}, {0.4, 0.0}, {0.2, 0.005}};
  auto dp = r_hull(pts, 1.0);
  CHECK(f0(dp) == 2);
  std::vector<Point2> outside{{0.0, 0.0}, {0.4, 0.0}, {0.2, 0.025}};
  CHECK(f0(r_hull(outside, 1.0)) == 3);
}

TEST_CASE("regular pentagon keeps all vertices") {
  std::vector<Point2> pts;
  for (int i = 0; i < 5; ++i) {
    double a = 2 * kPi * i / 5;
    pts.push_back({0.5 * std::cos(a), 0.5 * std::sin(a)});
  }
  CHECK(f0(r_hull(pts, 1.0)) == 5);
  CHECK(f0(r_hull_oracle(pts, 1.0)) == 5);
}

TEST_CASE("degenerate inputs") {
  std::vector<Point2> one{{0.3, -0.2}};
  auto dp = r_hull(one, 1.0);
  CHECK(f0(dp) == 1);
  CHECK(dp.edges().empty());
  CHECK(dp.area() == 0.0);
  CHECK(f0(r_hull_oracle(one, 1.0)) == 1);

  // collinear points collapse to the extreme pair
  std::vector<Point2> collinear{{0, 0}, {0.1, 0}, {0.25, 0}, {0.4, 0}, {0.33, 0}};
  auto line_hull = r_hull(collinear, 1.0);
  CHECK(f0(line_hull) == 2);
  CHECK(same_polygon(line_hull, r_hull_oracle(collinear, 1.0)));

  std::vector<Point2> empty;
  CHECK_THROWS_WITH_AS(r_hull(empty, 1.0), doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("infeasible point sets are rejected with the Welzl radius") {
  std::vector<Point2> pts;
  for (int i = 0; i < 3; ++i) {
    double a = 2 * kPi * i / 3;
    pts.push_back({1.2 * std::cos(a), 1.2 * std::sin(a)});
  }
  CHECK_THROWS_WITH_AS(r_hull(pts, 1.0), doctest::Contains("NotRFeasible"), Error);
  CHECK_THROWS_WITH_AS(r_hull_oracle(pts, 1.0), doctest::Contains("1.2"), Error);
}

TEST_CASE("fast hull equals the oracle on random instances") {
  auto disc = ConvexBody::parse("disc:0.9");
  auto ell = ConvexBody::parse("ellipse:0.6,0.5");
  for (int seed = 0; seed < 250; ++seed) {
    RngStream rng(8888, seed);
    const ConvexBody& body = (seed % 2) ? ell : disc;
    auto pts = body.sample_uniform(rng, 3 + seed % 28);
    auto fast = r_hull(pts, 1.0);
    auto slow = r_hull_oracle(pts, 1.0);
    REQUIRE(same_polygon(fast, slow));
    // disc-polygon invariant: all generators inside every edge disc
    CHECK(fast.max_edge_violation(pts) <= 1e-12);
  }
}

TEST_CASE("idempotence and insertion monotonicity") {
  auto ell = ConvexBody::parse("ellipse:0.6,0.5");
  for (int seed = 0; seed < 1000; ++seed) {
    RngStream rng(1717, seed);
    auto pts = ell.sample_uniform(rng, 20);
    auto dp = r_hull(pts, 1.0);
    if (seed % 10 == 0) CHECK(same_polygon(dp, r_hull(dp.vertices, 1.0)));

    auto extra = ell.sample_uniform(rng, 1);
    auto grown = pts;
    grown.push_back(extra[0]);
    auto dp2 = r_hull(grown, 1.0);
    CHECK(dp2.area() >= dp.area() - 1e-12);
    CHECK(missed_area(ell, dp2) <= missed_area(ell, dp) + 1e-12);
  }
}

TEST_CASE("r-hull nests between the linear hull and the body") {
  auto ell = ConvexBody::parse("ellipse:0.6,0.5");
  for (int seed = 0; seed < 50; ++seed) {
    RngStream rng(2323, seed);
    auto pts = ell.sample_uniform(rng, 25);
    auto dp = r_hull(pts, 1.0);

    // shoelace of the disc-polygon's vertices is the linear hull area of them
    double shoelace = 0.0;
    for (std::size_t i = 0; i < dp.vertices.size(); ++i) {
      shoelace += cross(dp.vertices[i], dp.vertices[(i + 1) % dp.vertices.size()]);
    }
    shoelace *= 0.5;
    CHECK(dp.area() >= shoelace - 1e-12);

    // vertex count never exceeds the linear hull's
    auto linear = r_hull(pts, 1e6);  // huge radius: essentially the linear hull
    CHECK(f0(dp) <= f0(linear));

    // arc midpoints stay inside the body (conv_r(X) inside K for r >= r_M)
    for (const auto& e : dp.edges()) {
      Point2 mid_dir = 0.5 * (e.start + e.end) - e.circle.center;
      double len = norm(mid_dir);
      Point2 arc_mid = e.circle.center + (e.circle.radius / len) * mid_dir;
      CHECK(ell.contains(arc_mid));
    }
  }
}

TEST_CASE("missed_area behaviour") {
  auto disc9 = ConvexBody::parse("disc:0.9");
  std::vector<Point2> dense;
  for (int i = 0; i < 4096; ++i) {
    double a = 2 * kPi * i / 4096;
    dense.push_back({0.9 * std::cos(a), 0.9 * std::sin(a)});
  }
  auto dp = r_hull(dense, 1.0);
  CHECK(missed_area(disc9, dp) >= -1e-9);
  CHECK(missed_area(disc9, dp) <= 1e-3);

  std::vector<Point2> single{{0.1, 0.0}};
  CHECK(missed_area(disc9, r_hull(single, 1.0)) ==
        doctest::Approx(disc9.area()).epsilon(1e-12));
}

TEST_CASE("edges carry the left-side supporting circle") {
  std::vector<Point2> pts{{0.0, 0.0}, {0.4, 0.0}};
  auto dp = r_hull(pts, 1.0);
  for (const auto& e : dp.edges()) {
    CHECK(cross(e.end - e.start, e.circle.center - e.start) > 0.0);
    CHECK(std::abs(dist(e.start, e.circle.center) - 1.0) <= 1e-9);
    CHECK(std::abs(dist(e.end, e.circle.center) - 1.0) <= 1e-9);
  }
}
