#pragma once

#include "spindle/body.hpp"

namespace spindle {

enum class Model { Inscribed, Circle, Circumscribed };

const char* model_name(Model m);
Model parse_model(std::string_view name);

// Euler gamma function for x > 0 (Lanczos, relative error <= 1e-12).
double gamma_function(double x);

// Boundary curvature integral over the body:
//   integral over dK of (kappa(x) - 1/r)^p dx
// computed in the normal-angle parametrization (ds = rho dtheta) by
// composite 32-node Gauss-Legendre with panel doubling to 1e-10.
double boundary_integral(const ConvexBody& body, double r, double p);

// Leading-order limit constants of the three models: coefficients of the
// vertex count, missed/excess area, and (circumscribed only) perimeter
// difference.
struct LimitConstants {
  Model model = Model::Inscribed;
  double c_f0 = 0.0;
  double c_area = 0.0;
  double c_perim = 0.0;  // circumscribed only; 0 when absent
  bool has_perim = false;
};

LimitConstants inscribed_limits(const ConvexBody& body, double r);
LimitConstants circle_limits(double r);
LimitConstants circumscribed_limits(const ConvexBody& body, double r);

// Feasibility gate shared by the smooth-body models: r * kappa_min >= 1 + 1e-6.
// Throws Infeasible naming the sliding radius when violated.
void require_r_feasible(const ConvexBody& body, double r);

}  // namespace spindle
