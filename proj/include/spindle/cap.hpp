#pragma once

#include <utility>

#include "spindle/body.hpp"
#include "spindle/geom.hpp"

namespace spindle {

struct CapMeasures {
  double area = 0.0;        // A(u,t)
  double arc_length = 0.0;  // length of the cutting-circle arc inside K
};

// The radius-r circle whose cap at outer-normal angle theta has height t:
// centered at x(theta) - (r + t) * u(theta).
CircleR cap_cutting_circle(const ConvexBody& body, double theta, double t, double r);

// Area and interior arc length of the disc-cap of height t at theta.
// Intersections of the cutting circle with the boundary are bracketed on a
// 2048-point grid (one adaptive doubling) and bisected to 1e-12; the area
// comes from Green's theorem along the composite boundary.
CapMeasures cap_measures(const ConvexBody& body, double theta, double t, double r);

// Closed forms for K = unit disc, r = 1, validated against the two-circle
// lens-area oracle: A(t) = t*sqrt(1 - t^2/4) + 2*asin(t/2),
// l(t) = 2*acos(t/2). Valid for t in [0, 2].
CapMeasures unit_disc_cap_measures(double t);

// Largest height t at which the cutting circle still meets K.
double max_cap_height(const ConvexBody& body, double theta, double r);

// Cap coordinates for a pair of points on the cutting circle: normal angle
// and height of the cap plus the two circle angles.
struct CapCoords {
  double theta = 0.0;
  double t = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

// The two cutting-circle points at angles phi1, phi2. Pure evaluation of the
// coordinate map; callers that need the pair inside K check containment
// themselves.
std::pair<Point2, Point2> cap_pair_from_coords(const ConvexBody& body,
                                               const CapCoords& coords, double r);

// |Jacobian| of (theta, t, phi1, phi2) -> (x1, x2):
// (r + t - 1/kappa(theta)) * r^2 * |sin(phi2 - phi1)|.
double cap_coords_jacobian(const ConvexBody& body, const CapCoords& coords, double r);

// Central finite-difference determinant of the same map.
double cap_coords_jacobian_fd(const ConvexBody& body, const CapCoords& coords, double r,
                              double step = 1e-6);

// Recovers (theta, t) of the cap whose cutting circle is centered at c:
// the vertex is the boundary point farthest from c.
std::pair<double, double> cap_vertex_from_center(const ConvexBody& body, Point2 c,
                                                 double r);

}  // namespace spindle
