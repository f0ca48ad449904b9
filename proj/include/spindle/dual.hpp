#pragma once

#include <span>
#include <vector>

#include "spindle/body.hpp"
#include "spindle/geom.hpp"
#include "spindle/hull.hpp"
#include "spindle/rng.hpp"

namespace spindle {

// r-dual of a smooth convex disc: the set of centers x with K inside rB + x.
// Support function h*(theta) = r - h(theta + pi). Requires r * kappa_min > 1.
ConvexBody r_dual(const ConvexBody& body, double r);

struct DualIdentityReport {
  double support_residual = 0.0;    // max |h(u) + h*(-u) - r|
  double curvature_residual = 0.0;  // max |1/k(u) + 1/k*(-u) - r|
  double perimeter_residual = 0.0;  // |Per(K) + Per(K*) - 2*pi*r|
  double area_residual = 0.0;       // |A(K*) - (A(K) - r*Per(K) + pi*r^2)|
};

DualIdentityReport dual_identity_report(const ConvexBody& body, double r);

// Intersection of equal-radius discs centered at a point set, built through
// the r-hull of the centers: boundary vertices are the outward equidistant
// points of consecutive hull vertices, and boundary arcs are radius-r arcs
// centered at the hull vertices.
struct DiscIntersection {
  double r = 0.0;
  std::vector<Point2> centers;        // the generating sample
  std::vector<Point2> hull_vertices;  // vertices of conv_r(centers)
  std::vector<Point2> vertices;       // boundary vertices (empty for 1 center)

  std::size_t f0() const { return hull_vertices.size() <= 1 ? 1 : vertices.size(); }
  double area() const;
  double perimeter() const;
  bool contains(Point2 p, double tol) const;
};

DiscIntersection disc_intersection(std::span<const Point2> centers, double r);

struct CircumscribedSample {
  DiscIntersection intersection;
  std::size_t f0 = 0;
  double area_diff = 0.0;   // A(intersection) - A(K)
  double perim_diff = 0.0;  // Per(intersection) - Per(K)
};

// Draws n uniform points in K^{*,r} and intersects the discs around them.
// The intersection is probed to circumscribe K on 64 boundary points.
CircumscribedSample circumscribed_sample(const ConvexBody& body, double r,
                                         std::size_t n, RngStream& rng);

// Same, with the dual body precomputed (hot path for simulations).
CircumscribedSample circumscribed_sample(const ConvexBody& body, const ConvexBody& dual,
                                         double r, std::size_t n, RngStream& rng);

}  // namespace spindle
