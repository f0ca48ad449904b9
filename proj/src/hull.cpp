#include "spindle/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spindle/errors.hpp"

namespace spindle {

namespace {

bool lex_less(Point2 a, Point2 b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

std::vector<Point2> dedupe(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 a, Point2 b) { return a == b; }),
            pts.end());
  return pts;
}

// Monotone chain on lex-sorted unique points; strictly convex ccw output.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

void canonical_rotate(std::vector<Point2>& v) {
  if (v.size() < 2) return;
  auto it = std::min_element(v.begin(), v.end(), lex_less);
  std::rotate(v.begin(), it, v.end());
}

void check_feasible(std::span<const Point2> pts, double r) {
  EnclosingCircle mec = min_enclosing_circle(pts);
  if (mec.radius > r * (1.0 + 1e-9)) {
    throw_validation("NotRFeasible", "points need an enclosing circle of radius " +
                                         std::to_string(mec.radius) +
                                         " > r = " + std::to_string(r));
  }
}

}  // namespace

std::vector<ArcEdge> DiscPolygon::edges() const {
  std::vector<ArcEdge> out;
  std::size_t m = vertices.size();
  if (m < 2) return out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Point2 a = vertices[i];
    Point2 b = vertices[(i + 1) % m];
    auto [c1, c2] = circles_through_pair(a, b, r);
    // supporting center sits left of the directed chord
    out.push_back({cross(b - a, c1.center - a) >= 0.0 ? c1 : c2, a, b});
  }
  return out;
}

double DiscPolygon::area() const {
  if (vertices.size() < 2) return 0.0;
  return arc_polygon_area(vertices, r);
}

double DiscPolygon::perimeter() const {
  if (vertices.size() < 2) return 0.0;
  return arc_polygon_perimeter(vertices, r);
}

double DiscPolygon::max_edge_violation(std::span<const Point2> generators) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const ArcEdge& e : edges()) {
    for (Point2 p : generators) {
      worst = std::max(worst, dist(p, e.circle.center) - e.circle.radius);
    }
  }
  return worst;
}

DiscPolygon r_hull(std::span<const Point2> points, double r) {
  if (points.empty()) throw_validation("EmptyInput", "r-hull of an empty set");
  std::vector<Point2> pts = dedupe(points);
  check_feasible(pts, r);

  std::vector<Point2> hull = convex_hull(std::move(pts));
  const double tol = 1e-12 * r;
  bool changed = hull.size() > 2;
  while (changed) {
    changed = false;
    std::size_t i = 0;
    while (hull.size() > 2 && i < hull.size()) {
      std::size_t m = hull.size();
      Point2 prev = hull[(i + m - 1) % m];
      Point2 next = hull[(i + 1) % m];
      if (spindle_contains(prev, next, r, hull[i], tol)) {
        hull.erase(hull.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }
  canonical_rotate(hull);
  return DiscPolygon{r, std::move(hull)};
}

DiscPolygon r_hull_oracle(std::span<const Point2> points, double r) {
  if (points.empty()) throw_validation("EmptyInput", "r-hull of an empty set");
  std::vector<Point2> pts = dedupe(points);
  check_feasible(pts, r);
  std::size_t n = pts.size();
  if (n == 1) return DiscPolygon{r, {pts[0]}};

  const double tol = 1e-12 * r;
  std::vector<std::pair<std::size_t, std::size_t>> edge_pairs;
  std::vector<bool> on_hull(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto discs = circles_through_pair(pts[i], pts[j], r);
      for (const CircleR& disc : {discs.first, discs.second}) {
        bool all_in = true;
        for (std::size_t k = 0; k < n; ++k) {
          if (!disc.contains(pts[k], tol)) {
            all_in = false;
            break;
          }
        }
        if (all_in) {
          edge_pairs.emplace_back(i, j);
          on_hull[i] = on_hull[j] = true;
        }
      }
    }
  }

  std::vector<Point2> verts;
  for (std::size_t i = 0; i < n; ++i) {
    if (on_hull[i]) verts.push_back(pts[i]);
  }
  if (verts.size() > 2) {
    Point2 centroid{0, 0};
    for (Point2 p : verts) centroid = centroid + p;
    centroid = (1.0 / static_cast<double>(verts.size())) * centroid;
    std::sort(verts.begin(), verts.end(), [&](Point2 a, Point2 b) {
      return std::atan2(a.y - centroid.y, a.x - centroid.x) <
             std::atan2(b.y - centroid.y, b.x - centroid.x);
    });
    // every consecutive pair must be one of the marked edges
    auto has_edge = [&](Point2 a, Point2 b) {
      for (auto [i, j] : edge_pairs) {
        if ((pts[i] == a && pts[j] == b) || (pts[i] == b && pts[j] == a)) return true;
      }
      return false;
    };
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (!has_edge(verts[i], verts[(i + 1) % verts.size()])) {
        throw_numeric("OracleAssembly",
                      "marked edges do not close into a cyclic boundary");
      }
    }
  }
  canonical_rotate(verts);
  return DiscPolygon{r, std::move(verts)};
}

double missed_area(const ConvexBody& body, const DiscPolygon& dp) {
  return body.area() - dp.area();
}

}  // namespace spindle
