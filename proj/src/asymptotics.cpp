#include "spindle/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spindle/errors.hpp"
#include "spindle/quadrature.hpp"

namespace spindle {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

const char* model_name(Model m) {
  switch (m) {
    case Model::Inscribed: return "inscribed";
    case Model::Circle: return "circle";
    case Model::Circumscribed: return "circumscribed";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  if (name == "inscribed") return Model::Inscribed;
  if (name == "circle") return Model::Circle;
  if (name == "circumscribed") return Model::Circumscribed;
  throw_validation("BadModel", "unknown model '" + std::string(name) +
                                   "' (expected inscribed|circle|circumscribed)");
}

double gamma_function(double x) {
  if (!(x > 0.0)) {
    throw_validation("DomainError", "gamma_function needs x > 0");
  }
  // Lanczos approximation, g = 7, 9 terms
  static constexpr double kCoef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * gamma_function(1.0 - x));
  }
  double z = x - 1.0;
  double acc = kCoef[0];
  for (int i = 1; i < 9; ++i) {
    acc += kCoef[i] / (z + i);
  }
  double t = z + 7.5;
  return std::sqrt(kTwoPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

void require_r_feasible(const ConvexBody& body, double r) {
  double r_M = body.sliding_radius();
  double kappa_m = 1.0 / r_M;
  if (!(r * kappa_m >= 1.0 + 1e-6)) {
    throw_validation("Infeasible",
                     "model requires r > r_M (sliding radius): r = " +
                         std::to_string(r) + ", r_M = " + std::to_string(r_M));
  }
}

double boundary_integral(const ConvexBody& body, double r, double p) {
  if (p < 0.0) {
    // integrand blows up where kappa approaches 1/r
    double kappa_m = 1.0 / body.sliding_radius();
    if (!(kappa_m * r >= 1.0 + 1e-6)) {
      throw_numeric("SingularIntegrand",
                    "(kappa - 1/r)^p with p < 0 needs kappa*r bounded away from 1");
    }
  }
  return integrate_adaptive(
      [&](double theta) {
        double rho = body.curvature_radius(theta);
        double base = 1.0 / rho - 1.0 / r;
        return std::pow(base, p) * rho;
      },
      0.0, kTwoPi, 1e-10);
}

LimitConstants inscribed_limits(const ConvexBody& body, double r) {
  require_r_feasible(body, r);
  double integral = boundary_integral(body, r, 1.0 / 3.0);
  double area = body.area();
  double g53 = gamma_function(5.0 / 3.0);
  LimitConstants out;
  out.model = Model::Inscribed;
  out.c_f0 = std::cbrt(2.0 / (3.0 * area)) * g53 * integral;
  out.c_area = std::cbrt(2.0 * area * area / 3.0) * g53 * integral;
  return out;
}

LimitConstants circle_limits(double r) {
  if (!(r > 0.0)) throw_validation("Infeasible", "circle model needs r > 0");
  LimitConstants out;
  out.model = Model::Circle;
  out.c_f0 = kPi * kPi / 2.0;
  out.c_area = r * r * kPi * kPi * kPi / 3.0;
  return out;
}

LimitConstants circumscribed_limits(const ConvexBody& body, double r) {
  require_r_feasible(body, r);
  double area_star = body.area() - r * body.perimeter() + r * r * kPi;
  double g53 = gamma_function(5.0 / 3.0);
  double g23 = gamma_function(2.0 / 3.0);
  double i23 = boundary_integral(body, r, 2.0 / 3.0);
  double im13 = boundary_integral(body, r, -1.0 / 3.0);
  double iperim = integrate_adaptive(
      [&](double theta) {
        double rho = body.curvature_radius(theta);
        double kappa = 1.0 / rho;
        double base = kappa - 1.0 / r;
        return std::pow(base, -1.0 / 3.0) * (4.0 * kappa - 1.0 / r) * rho;
      },
      0.0, kTwoPi, 1e-10);

  LimitConstants out;
  out.model = Model::Circumscribed;
  out.c_f0 = std::cbrt(2.0 * r / (3.0 * area_star)) * g53 * i23;
  double scale = std::pow(12.0 * area_star, 2.0 / 3.0) * g23 * std::pow(r, -2.0 / 3.0);
  out.c_perim = scale / 36.0 * iperim;
  out.c_area = scale / 12.0 * im13;
  out.has_perim = true;
  return out;
}

}  // namespace spindle
