#pragma once

#include <functional>

namespace spindle {

// Composite 32-node Gauss-Legendre over [a, b] split into `panels` panels.
double integrate_gl32(const std::function<double(double)>& f, double a, double b,
                      int panels);

// Panel-doubling Gauss-Legendre: doubles the panel count until two successive
// values differ by less than abs_tol. Throws QuadratureNoConvergence past
// max_panels.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_panels = 1 << 13);

// Golden-section minimization of a unimodal function on [a, b] to x-tolerance.
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double x_tol);

// Bisection root of f (f(a) and f(b) must bracket a sign change) to x-tolerance.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double x_tol);

}  // namespace spindle
