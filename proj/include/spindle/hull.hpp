#pragma once

#include <span>
#include <vector>

#include "spindle/body.hpp"
#include "spindle/geom.hpp"

namespace spindle {

// A disc-polygon: ccw cyclic vertices joined by radius-r arcs bulging
// outward. One vertex means a degenerate single-point hull (no edges);
// two vertices bound a spindle (two edges).
struct DiscPolygon {
  double r = 0.0;
  std::vector<Point2> vertices;

  std::size_t vertex_count() const { return vertices.size(); }
  std::vector<ArcEdge> edges() const;
  double area() const;
  double perimeter() const;

  // Every generator must lie in the supporting disc of every edge
  // (closed, tol 1e-12*r). Returns the worst signed violation.
  double max_edge_violation(std::span<const Point2> generators) const;
};

inline std::size_t f0(const DiscPolygon& dp) { return dp.vertices.size(); }

// r-hull (spindle convex hull) of a point set: linear convex hull followed
// by cyclic triple pruning until stable. Vertices come out ccw starting
// from the lexicographically smallest.
DiscPolygon r_hull(std::span<const Point2> points, double r);

// O(n^3) reference: an ordered pair spans an edge when one of the two
// radius-r discs through it contains every point (closed test).
DiscPolygon r_hull_oracle(std::span<const Point2> points, double r);

// Area of K not covered by the disc-polygon.
double missed_area(const ConvexBody& body, const DiscPolygon& dp);

}  // namespace spindle
