#include "spindle/dual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spindle/errors.hpp"

namespace spindle {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

ConvexBody r_dual(const ConvexBody& body, double r) {
  return ConvexBody::make_dual(body, r);
}

DualIdentityReport dual_identity_report(const ConvexBody& body, double r) {
  ConvexBody dual = r_dual(body, r);
  DualIdentityReport rep;
  const int grid = 1024;
  for (int i = 0; i < grid; ++i) {
    double t = kTwoPi * i / grid;
    rep.support_residual = std::max(
        rep.support_residual, std::abs(body.support(t) + dual.support(t + kPi) - r));
    rep.curvature_residual =
        std::max(rep.curvature_residual,
                 std::abs(body.curvature_radius(t) + dual.curvature_radius(t + kPi) - r));
  }
  rep.perimeter_residual =
      std::abs(body.perimeter() + dual.perimeter() - 2.0 * r * kPi);
  rep.area_residual = std::abs(
      dual.area() - (body.area() - r * body.perimeter() + r * r * kPi));
  return rep;
}

double DiscIntersection::area() const {
  if (hull_vertices.size() <= 1) return kPi * r * r;
  return arc_polygon_area(vertices, r);
}

double DiscIntersection::perimeter() const {
  if (hull_vertices.size() <= 1) return kTwoPi * r;
  return arc_polygon_perimeter(vertices, r);
}

bool DiscIntersection::contains(Point2 p, double tol) const {
  // the intersection over all centers equals the intersection over the
  // r-hull vertices of the centers
  for (Point2 w : hull_vertices) {
    if (dist(p, w) > r + tol) return false;
  }
  return true;
}

DiscIntersection disc_intersection(std::span<const Point2> centers, double r) {
  DiscPolygon hull = r_hull(centers, r);
  DiscIntersection out;
  out.r = r;
  out.centers.assign(centers.begin(), centers.end());
  out.hull_vertices = hull.vertices;

  std::size_t m = hull.vertices.size();
  if (m <= 1) return out;

  Point2 centroid{0, 0};
  for (Point2 w : hull.vertices) centroid = centroid + w;
  centroid = (1.0 / static_cast<double>(m)) * centroid;

  if (m == 2) {
    Point2 a = hull.vertices[0], b = hull.vertices[1];
    double d = dist(a, b);
    Point2 mid = 0.5 * (a + b);
    Point2 n = (1.0 / d) * perp(b - a);
    double q2 = r * r - 0.25 * d * d;
    double q = q2 > 0.0 ? std::sqrt(q2) : 0.0;
    out.vertices = {mid + q * n, mid - q * n};
    return out;
  }

  out.vertices.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    Point2 a = hull.vertices[j];
    Point2 b = hull.vertices[(j + 1) % m];
    double d = dist(a, b);
    Point2 mid = 0.5 * (a + b);
    Point2 n = (1.0 / d) * perp(b - a);
    double q2 = r * r - 0.25 * d * d;
    double q = q2 > 0.0 ? std::sqrt(q2) : 0.0;
    Point2 v1 = mid + q * n;
    Point2 v2 = mid - q * n;
    // of the two circle crossings, the boundary vertex is the one on the
    // hull-centroid side of the chord: the far crossing violates the discs
    // centered across the hull (tie tolerance 1e-12)
    double side_centroid = cross(b - a, centroid - a);
    double side_v1 = cross(b - a, v1 - a);
    Point2 v = (side_v1 * side_centroid >= -1e-12) ? v1 : v2;
    out.vertices.push_back(v);
  }

  // ccw order follows the hull; sanity-check the structure closed up
  if (out.vertices.size() != m) {
    throw_numeric("EmptyIntersection", "disc intersection boundary did not close");
  }
  return out;
}

CircumscribedSample circumscribed_sample(const ConvexBody& body, double r, std::size_t n,
                                         RngStream& rng) {
  ConvexBody dual = r_dual(body, r);
  return circumscribed_sample(body, dual, r, n, rng);
}

CircumscribedSample circumscribed_sample(const ConvexBody& body, const ConvexBody& dual,
                                         double r, std::size_t n, RngStream& rng) {
  if (n < 1) throw_validation("EmptyInput", "need at least one sample point");
  std::vector<Point2> pts = dual.sample_uniform(rng, n);
  CircumscribedSample out;
  out.intersection = disc_intersection(pts, r);
  out.f0 = out.intersection.f0();
  out.area_diff = out.intersection.area() - body.area();
  out.perim_diff = out.intersection.perimeter() - body.perimeter();

  const double tol = 1e-9 * r;
  for (int i = 0; i < 64; ++i) {
    Point2 p = body.boundary_point(kTwoPi * i / 64);
    if (!out.intersection.contains(p, tol)) {
      throw_numeric("EmptyIntersection",
                    "sampled disc intersection fails to circumscribe the body");
    }
  }
  return out;
}

}  // namespace spindle
