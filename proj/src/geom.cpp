#include "spindle/geom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spindle/errors.hpp"
#include "spindle/rng.hpp"

namespace spindle {

std::pair<CircleR, CircleR> circles_through_pair(Point2 a, Point2 b, double r) {
  double d = dist(a, b);
  if (d == 0.0) {
    throw_validation("DegeneratePair", "the two points coincide");
  }
  if (d > 2.0 * r * (1.0 + 1e-9)) {
    throw_validation("PairTooFar", "chord " + std::to_string(d) +
                                       " exceeds the diameter " + std::to_string(2 * r));
  }
  Point2 mid = 0.5 * (a + b);
  Point2 n = (1.0 / d) * perp(b - a);
  double off2 = r * r - 0.25 * d * d;
  double off = off2 > 0.0 ? std::sqrt(off2) : 0.0;
  return {CircleR{mid + off * n, r}, CircleR{mid - off * n, r}};
}

bool spindle_contains(Point2 a, Point2 b, double r, Point2 p, double tol) {
  if (a == b) {
    return dist(p, a) <= tol;
  }
  auto [c1, c2] = circles_through_pair(a, b, r);
  return c1.contains(p, tol) && c2.contains(p, tol);
}

std::pair<CircleR, CircleR> SpindlePair::discs() const {
  return circles_through_pair(a, b, r);
}

double SpindlePair::area() const {
  double d = dist(a, b);
  double half = 0.5 * d;
  double seg = r * r * std::asin(std::min(1.0, half / r)) -
               half * std::sqrt(std::max(0.0, r * r - half * half));
  return 2.0 * seg;
}

namespace {

double circular_segment_area(double halfchord, double r) {
  double s = halfchord / r;
  if (s > 1.0 + 1e-9) {
    throw_validation("ChordTooLong", "edge chord " + std::to_string(2 * halfchord) +
                                         " exceeds 2r = " + std::to_string(2 * r));
  }
  if (s > 1.0 - 1e-9) {
    // angle form, stable at the semicircle
    double theta = std::asin(std::min(1.0, s));
    return r * r * (theta - std::sin(theta) * std::cos(theta));
  }
  return r * r * std::asin(s) - halfchord * std::sqrt(r * r - halfchord * halfchord);
}

double shoelace(std::span<const Point2> v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc += cross(v[i], v[(i + 1) % v.size()]);
  }
  return 0.5 * acc;
}

}  // namespace

double arc_polygon_area(std::span<const Point2> vertices, double r) {
  if (vertices.size() < 2) {
    throw_validation("EmptyInput", "arc polygon needs at least 2 vertices");
  }
  double poly = shoelace(vertices);
  double scale = r * r;
  if (poly < -1e-12 * scale) {
    throw_validation("NotCcw", "vertices are in cw order (signed area " +
                                   std::to_string(poly) + ")");
  }
  double segments = 0.0;
  std::size_t m = vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    double half = 0.5 * dist(vertices[i], vertices[(i + 1) % m]);
    segments += circular_segment_area(half, r);
  }
  return std::max(0.0, poly) + segments;
}

double arc_polygon_perimeter(std::span<const Point2> vertices, double r) {
  if (vertices.size() < 2) {
    throw_validation("EmptyInput", "arc polygon needs at least 2 vertices");
  }
  double total = 0.0;
  std::size_t m = vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.5 * dist(vertices[i], vertices[(i + 1) % m]) / r;
    if (s > 1.0 + 1e-9) {
      throw_validation("ChordTooLong", "edge chord exceeds 2r");
    }
    total += 2.0 * r * std::asin(std::min(1.0, s));
  }
  return total;
}

double circle_lens_area(double d, double r) {
  if (d <= 0.0) return std::acos(-1.0) * r * r;
  if (d >= 2.0 * r) return 0.0;
  double half = 0.5 * d;
  return 2.0 * r * r * std::acos(half / r) - half * std::sqrt(4.0 * r * r - d * d);
}

namespace {

bool in_circle(const EnclosingCircle& c, Point2 p) {
  double rt = c.radius * (1.0 + 1e-14) + 1e-300;
  return norm2(p - c.center) <= rt * rt;
}

EnclosingCircle circle_two(Point2 a, Point2 b) {
  Point2 c = 0.5 * (a + b);
  return {c, std::max(dist(c, a), dist(c, b))};
}

EnclosingCircle circle_three(Point2 a, Point2 b, Point2 c) {
  // circumcircle, coordinates relative to a for conditioning
  Point2 u = b - a, v = c - a;
  double den = 2.0 * cross(u, v);
  if (std::abs(den) < 1e-30) {
    // nearly collinear: widest two-point circle
    EnclosingCircle best = circle_two(a, b);
    for (const auto& cand : {circle_two(a, c), circle_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  double u2 = norm2(u), v2 = norm2(v);
  Point2 rel{(v.y * u2 - u.y * v2) / den, (u.x * v2 - v.x * u2) / den};
  Point2 center = a + rel;
  double radius = std::max({dist(center, a), dist(center, b), dist(center, c)});
  return {center, radius};
}

}  // namespace

EnclosingCircle min_enclosing_circle(std::span<const Point2> points, std::uint64_t seed) {
  if (points.empty()) {
    throw_validation("EmptyInput", "no points for the enclosing circle");
  }
  std::vector<Point2> pts(points.begin(), points.end());
  RngStream rng(seed, pts.size());
  for (std::size_t i = pts.size(); i > 1; --i) {
    std::swap(pts[i - 1], pts[rng.uniform_index(i)]);
  }

  EnclosingCircle d{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (in_circle(d, pts[i])) continue;
    d = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (in_circle(d, pts[j])) continue;
      d = circle_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (in_circle(d, pts[k])) continue;
        d = circle_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return d;
}

}  // namespace spindle
