#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spindle/geom.hpp"
#include "spindle/rng.hpp"

namespace spindle {

// A smooth convex disc given by its support function h(theta) with two
// derivatives, theta being the outer-normal angle. Validated C2+ on
// construction: h > 0 and h + h'' > 0 on a 4096-point grid. Immutable and
// freely shareable across threads.
class ConvexBody {
 public:
  // BodySpec grammar: disc:R | ellipse:a,b | cw:w,b3 | trig:a0[,ak,bk]*
  static ConvexBody parse(std::string_view spec);

  static ConvexBody make_disc(double radius);
  static ConvexBody make_ellipse(double a, double b);
  static ConvexBody make_constant_width(double width, double b3);
  // coeffs = a0, a1, b1, a2, b2, ...
  static ConvexBody make_trig(std::vector<double> coeffs);
  // r-dual: h*(theta) = r - h(theta + pi). Requires r * kappa_min > 1.
  static ConvexBody make_dual(const ConvexBody& base, double r);

  double support(double theta) const;         // h
  double support_deriv(double theta) const;   // h'
  double support_deriv2(double theta) const;  // h''

  // rho = h + h'' (radius of curvature); curvature = 1/rho.
  double curvature_radius(double theta) const;
  double curvature(double theta) const { return 1.0 / curvature_radius(theta); }

  // Boundary point with outer normal angle theta: x = h*u + h'*u_perp.
  Point2 boundary_point(double theta) const;

  // (r_m, r_M) = (min rho, max rho): rolling and sliding radii.
  std::pair<double, double> rolling_radii() const;
  double rolling_radius() const { return rolling_radii().first; }
  double sliding_radius() const { return rolling_radii().second; }

  double area() const;
  double perimeter() const;

  // Closed containment (distance tolerance 1e-12).
  bool contains(Point2 p) const;

  // min over theta of h(theta) - <p, u(theta)>: nonnegative inside, and
  // -(distance to the body) outside. 1024-grid plus golden-section.
  double support_gap(Point2 p) const;

  // i.i.d. uniform points by rejection from the support bounding box.
  // Consumes exactly two uniforms per proposal; optional proposal counter.
  std::vector<Point2> sample_uniform(RngStream& rng, std::size_t count,
                                     std::uint64_t* proposals = nullptr) const;

  const std::string& spec_string() const;

  // True when h(theta) + h(theta+pi) is constant (within 1e-9); the width
  // is reported through `width` when non-null.
  bool is_constant_width(double* width = nullptr) const;

  bool is_disc(double* radius = nullptr) const;

  struct Data;  // defined in body.cpp

 private:
  explicit ConvexBody(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

}  // namespace spindle
