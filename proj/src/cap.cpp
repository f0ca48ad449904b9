#include "spindle/cap.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spindle/errors.hpp"
#include "spindle/quadrature.hpp"

namespace spindle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kBracketGrid = 2048;

double wrap_to(double angle, double lo) {
  while (angle < lo) angle += kTwoPi;
  while (angle >= lo + kTwoPi) angle -= kTwoPi;
  return angle;
}

}  // namespace

CircleR cap_cutting_circle(const ConvexBody& body, double theta, double t, double r) {
  Point2 xu = body.boundary_point(theta);
  Point2 u = unit_vector(theta);
  return {xu - (r + t) * u, r};
}

CapMeasures cap_measures(const ConvexBody& body, double theta, double t, double r) {
  if (t <= 0.0) {
    throw_validation("NoIntersection", "cap height must be positive (got " +
                                        std::to_string(t) + ")");
  }
  CircleR cut = cap_cutting_circle(body, theta, t, r);
  const Point2 c = cut.center;
  auto g = [&](double phi) { return norm2(body.boundary_point(phi) - c) - r * r; };

  // the boundary near theta is outside the circle; everything is periodic,
  // so scan one full turn centered on theta
  double phi1 = 0.0, phi2 = 0.0;
  bool found = false;
  for (int grid = kBracketGrid; grid <= 2 * kBracketGrid && !found; grid *= 2) {
    std::vector<double> vals(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
      vals[i] = g(theta - kPi + kTwoPi * i / grid);
    }
    std::vector<std::pair<double, double>> brackets;
    for (int i = 0; i < grid; ++i) {
      if ((vals[i] > 0.0) != (vals[i + 1] > 0.0)) {
        double a = theta - kPi + kTwoPi * i / grid;
        brackets.emplace_back(a, a + kTwoPi / grid);
      }
    }
    if (brackets.empty()) {
      throw_validation("NoIntersection",
                    "cutting circle misses the body (t beyond the maximal height?)");
    }
    if (brackets.size() == 2) {
      double ra = bisect_root(g, brackets[0].first, brackets[0].second, 1e-12);
      double rb = bisect_root(g, brackets[1].first, brackets[1].second, 1e-12);
      // order them so the arc [phi1, phi2] through theta stays outside the circle
      if (ra <= theta && theta <= rb) {
        phi1 = ra;
        phi2 = rb;
      } else {
        // both roots on one side: the positive arc through theta wraps
        phi1 = wrap_to(rb, theta - kTwoPi);
        phi2 = wrap_to(ra, theta);
      }
      found = true;
    }
  }
  if (!found) {
    throw_numeric("RootBracketFailure",
                  "could not isolate two boundary crossings of the cutting circle");
  }

  // area of the K-side boundary piece by Green's theorem: the support
  // parametrization gives (x cross x') = h * rho
  double body_part = 0.5 * integrate_adaptive(
                               [&](double phi) {
                                 return body.support(phi) * body.curvature_radius(phi);
                               },
                               phi1, phi2, 1e-12);

  Point2 i1 = body.boundary_point(phi1);
  Point2 i2 = body.boundary_point(phi2);
  double psi1 = std::atan2(i1.y - c.y, i1.x - c.x);
  double psi2 = std::atan2(i2.y - c.y, i2.x - c.x);
  // the cap lies outside the circle, so its boundary runs clockwise along it
  double sweep = wrap_to(psi1 - psi2, -kTwoPi);
  if (sweep == 0.0) sweep = -kTwoPi;
  double mid = psi2 + 0.5 * sweep;
  if (!body.contains(c + (r * (1.0 - 1e-9)) * unit_vector(mid))) {
    // tangency-degenerate configurations land here; the complementary arc
    // would have the wrong orientation, so refuse rather than guess
    throw_numeric("RootBracketFailure", "interior circle arc failed the midpoint probe");
  }
  double psi_end = psi2 + sweep;
  double circle_part =
      0.5 * (r * (c.x * (std::sin(psi_end) - std::sin(psi2)) -
                  c.y * (std::cos(psi_end) - std::cos(psi2))) +
             r * r * sweep);

  return {body_part + circle_part, r * std::abs(sweep)};
}

CapMeasures unit_disc_cap_measures(double t) {
  if (t < 0.0 || t > 2.0) {
    throw_validation("DomainError",
                     "unit-disc cap height must lie in [0, 2], got " + std::to_string(t));
  }
  double area = t * std::sqrt(1.0 - 0.25 * t * t) + 2.0 * std::asin(0.5 * t);
  double arc = 2.0 * std::acos(0.5 * t);
  return {area, arc};
}

double max_cap_height(const ConvexBody& body, double theta, double r) {
  Point2 xu = body.boundary_point(theta);
  Point2 u = unit_vector(theta);
  // the circle still meets K while dist(center, K) <= r
  auto clearance = [&](double t) { return body.support_gap(xu - (r + t) * u) + r; };
  double hi = body.support(theta) + body.support(theta + kPi) + 2.0 * r;
  while (clearance(hi) > 0.0) hi *= 2.0;
  return bisect_root(clearance, 0.0, hi, 1e-10);
}

std::pair<Point2, Point2> cap_pair_from_coords(const ConvexBody& body,
                                               const CapCoords& coords, double r) {
  CircleR cut = cap_cutting_circle(body, coords.theta, coords.t, r);
  return {cut.center + r * unit_vector(coords.phi1),
          cut.center + r * unit_vector(coords.phi2)};
}

double cap_coords_jacobian(const ConvexBody& body, const CapCoords& coords, double r) {
  double sine = std::abs(std::sin(coords.phi2 - coords.phi1));
  if (sine < 1e-12) {
    throw_numeric("SingularJacobian", "the two circle directions are parallel");
  }
  double rho = body.curvature_radius(coords.theta);
  return (r + coords.t - rho) * r * r * sine;
}

double cap_coords_jacobian_fd(const ConvexBody& body, const CapCoords& coords, double r,
                              double step) {
  auto eval = [&](const std::array<double, 4>& v) {
    CapCoords c{v[0], v[1], v[2], v[3]};
    auto [x1, x2] = cap_pair_from_coords(body, c, r);
    return std::array<double, 4>{x1.x, x1.y, x2.x, x2.y};
  };
  std::array<double, 4> base{coords.theta, coords.t, coords.phi1, coords.phi2};
  double m[4][4];
  for (int j = 0; j < 4; ++j) {
    auto hi = base, lo = base;
    hi[j] += step;
    lo[j] -= step;
    auto fhi = eval(hi), flo = eval(lo);
    for (int i = 0; i < 4; ++i) {
      m[i][j] = (fhi[i] - flo[i]) / (2.0 * step);
    }
  }
  // 4x4 determinant by partial-pivot elimination
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (pivot != col) {
      for (int k = 0; k < 4; ++k) std::swap(m[pivot][k], m[col][k]);
      det = -det;
    }
    if (m[col][col] == 0.0) return 0.0;
    det *= m[col][col];
    for (int row = col + 1; row < 4; ++row) {
      double f = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return std::abs(det);
}

std::pair<double, double> cap_vertex_from_center(const ConvexBody& body, Point2 c,
                                                 double r) {
  auto negdist = [&](double phi) { return -norm(body.boundary_point(phi) - c); };
  int grid = 1024;
  int best = 0;
  double best_v = 0.0;
  for (int i = 0; i < grid; ++i) {
    double v = negdist(kTwoPi * i / grid);
    if (i == 0 || v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double step = kTwoPi / grid;
  double theta = golden_section_min(negdist, (best - 1) * step, (best + 1) * step, 1e-12);
  double t = norm(body.boundary_point(theta) - c) - r;
  return {wrap_to(theta, 0.0), t};
}

}  // namespace spindle
