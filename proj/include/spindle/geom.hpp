#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace spindle {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp(Point2 p) { return {-p.y, p.x}; }  // ccw quarter turn
inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct CircleR {
  Point2 center;
  double radius = 0.0;

  // Closed membership with a signed tolerance: points within radius + tol count.
  bool contains(Point2 p, double tol) const {
    double rt = radius + tol;
    return norm2(p - center) <= rt * rt;
  }
};

// A circular arc running ccw from start to end on its supporting circle.
// Central angle is in (0, pi]: arcs always take the shorter way round.
struct ArcEdge {
  CircleR circle;
  Point2 start;
  Point2 end;

  double central_angle() const {
    double half = 0.5 * dist(start, end) / circle.radius;
    return 2.0 * std::asin(std::min(1.0, half));
  }
  double length() const { return circle.radius * central_angle(); }
};

// The r-spindle of two points: intersection of the two radius-r discs
// through both. Degenerates to the chord as r grows.
struct SpindlePair {
  Point2 a;
  Point2 b;
  double r = 0.0;

  std::pair<CircleR, CircleR> discs() const;
  double area() const;
};

// The two radius-r circles through a and b. For |a-b| == 2r they coincide.
std::pair<CircleR, CircleR> circles_through_pair(Point2 a, Point2 b, double r);

// Membership of p in the r-spindle [a,b]_r (closed, signed tolerance tol).
bool spindle_contains(Point2 a, Point2 b, double r, Point2 p, double tol);

// Area of the region bounded by radius-r arcs over a ccw cyclic vertex list:
// shoelace polygon area plus one outward circular segment per edge.
double arc_polygon_area(std::span<const Point2> vertices, double r);

// Total arc length of the boundary: sum of 2r*asin(halfchord/r) per edge.
double arc_polygon_perimeter(std::span<const Point2> vertices, double r);

// Area of the intersection of two radius-r discs whose centers are d apart.
double circle_lens_area(double d, double r);

struct EnclosingCircle {
  Point2 center;
  double radius = 0.0;
};

// Smallest circle containing all points (randomized incremental, expected
// linear time). Deterministic: the internal shuffle is seeded from `seed`.
EnclosingCircle min_enclosing_circle(std::span<const Point2> points,
                                     std::uint64_t seed = 0x5eed5eedULL);

}  // namespace spindle
