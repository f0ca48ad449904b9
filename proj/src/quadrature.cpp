#include "spindle/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "spindle/errors.hpp"

namespace spindle {

namespace {

struct Gl32Rule {
  std::array<double, 32> nodes;
  std::array<double, 32> weights;
};

// Nodes of the 32-point Gauss-Legendre rule on [-1, 1], computed once by
// Newton iteration on P_32 from Chebyshev starting points.
const Gl32Rule& gl32_rule() {
  static const Gl32Rule rule = [] {
    constexpr int n = 32;
    Gl32Rule r{};
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

}  // namespace

double integrate_gl32(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  const auto& rule = gl32_rule();
  double total = 0.0;
  double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * width;
    double half = 0.5 * width;
    double acc = 0.0;
    for (int i = 0; i < 32; ++i) {
      acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += half * acc;
  }
  return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_panels) {
  double prev = integrate_gl32(f, a, b, 1);
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    double cur = integrate_gl32(f, a, b, panels);
    if (std::abs(cur - prev) < abs_tol) {
      return cur;
    }
    prev = cur;
  }
  throw_numeric("QuadratureNoConvergence",
                "panel doubling did not reach tolerance " + std::to_string(abs_tol));
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double x_tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > x_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double x_tol) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw_numeric("RootBracketFailure", "no sign change over the bracket");
  }
  while (b - a > x_tol) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace spindle
