#include "spindle/body.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "spindle/errors.hpp"
#include "spindle/quadrature.hpp"

namespace spindle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kValidationGrid = 4096;
constexpr int kGapGrid = 1024;
constexpr int kRadialBins = 2048;
constexpr int kRadialSamples = 16384;

enum class Kind { Disc, Ellipse, Trig, Dual };

struct SupportFn {
  virtual ~SupportFn() = default;
  virtual double h(double theta) const = 0;
  virtual double h1(double theta) const = 0;
  virtual double h2(double theta) const = 0;
};

struct DiscFn final : SupportFn {
  double radius;
  explicit DiscFn(double r) : radius(r) {}
  double h(double) const override { return radius; }
  double h1(double) const override { return 0.0; }
  double h2(double) const override { return 0.0; }
};

struct EllipseFn final : SupportFn {
  double a, b;
  EllipseFn(double a_, double b_) : a(a_), b(b_) {}
  double h(double t) const override {
    double c = std::cos(t), s = std::sin(t);
    return std::sqrt(a * a * c * c + b * b * s * s);
  }
  double h1(double t) const override {
    double w = wval(t);
    return wd1(t) / (2.0 * std::sqrt(w));
  }
  double h2(double t) const override {
    double w = wval(t);
    double w1 = wd1(t), w2 = wd2(t);
    return (2.0 * w * w2 - w1 * w1) / (4.0 * w * std::sqrt(w));
  }

 private:
  double wval(double t) const {
    double c = std::cos(t), s = std::sin(t);
    return a * a * c * c + b * b * s * s;
  }
  double wd1(double t) const { return (b * b - a * a) * std::sin(2.0 * t); }
  double wd2(double t) const { return 2.0 * (b * b - a * a) * std::cos(2.0 * t); }
};

struct TrigFn final : SupportFn {
  // coeffs: a0, a1, b1, a2, b2, ...
  std::vector<double> coeffs;
  explicit TrigFn(std::vector<double> c) : coeffs(std::move(c)) {}
  double h(double t) const override {
    double acc = coeffs[0];
    for (std::size_t k = 1; 2 * k - 1 < coeffs.size(); ++k) {
      double ak = coeffs[2 * k - 1];
      double bk = 2 * k < coeffs.size() ? coeffs[2 * k] : 0.0;
      acc += ak * std::cos(k * t) + bk * std::sin(k * t);
    }
    return acc;
  }
  double h1(double t) const override {
    double acc = 0.0;
    for (std::size_t k = 1; 2 * k - 1 < coeffs.size(); ++k) {
      double ak = coeffs[2 * k - 1];
      double bk = 2 * k < coeffs.size() ? coeffs[2 * k] : 0.0;
      acc += static_cast<double>(k) * (-ak * std::sin(k * t) + bk * std::cos(k * t));
    }
    return acc;
  }
  double h2(double t) const override {
    double acc = 0.0;
    for (std::size_t k = 1; 2 * k - 1 < coeffs.size(); ++k) {
      double ak = coeffs[2 * k - 1];
      double bk = 2 * k < coeffs.size() ? coeffs[2 * k] : 0.0;
      acc -= static_cast<double>(k * k) * (ak * std::cos(k * t) + bk * std::sin(k * t));
    }
    return acc;
  }
};

}  // namespace

struct ConvexBody::Data {
  std::unique_ptr<const SupportFn> fn;
  Kind kind = Kind::Trig;
  std::string spec;
  // fast-path parameters
  double disc_radius = 0.0;
  double ell_a = 0.0, ell_b = 0.0;

  double r_m = 0.0, r_M = 0.0;
  double area = 0.0, perimeter = 0.0;
  double bx0 = 0.0, bx1 = 0.0, by0 = 0.0, by1 = 0.0;

  // conservative radial bounds about the (interior) origin
  std::vector<double> radial_lo, radial_hi;

  double h(double t) const { return fn->h(t); }
};

namespace {

using Data = ConvexBody::Data;

double refined_extremum(const SupportFn& fn, int i, int grid, bool want_max) {
  double step = kTwoPi / grid;
  double a = (i - 1) * step, b = (i + 1) * step;
  auto f = [&](double t) {
    double v = fn.h(t) + fn.h2(t);
    return want_max ? -v : v;
  };
  double x = golden_section_min(f, a, b, 1e-10);
  double v = fn.h(x) + fn.h2(x);
  return v;
}

void finalize(Data& d) {
  const SupportFn& fn = *d.fn;
  std::vector<double> rho(kValidationGrid);
  double min_h = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kValidationGrid; ++i) {
    double t = kTwoPi * i / kValidationGrid;
    rho[i] = fn.h(t) + fn.h2(t);
    min_h = std::min(min_h, fn.h(t));
    if (!(rho[i] > 0.0)) {
      throw_validation("BodyNotC2Plus",
                       d.spec + ": curvature radius h + h'' is " +
                           std::to_string(rho[i]) + " at theta=" + std::to_string(t) +
                           "; the boundary must have strictly positive curvature");
    }
  }
  if (!(min_h > 0.0)) {
    throw_validation("OriginNotInterior",
                     d.spec + ": support function must stay positive (origin interior)");
  }

  double r_m = std::numeric_limits<double>::infinity();
  double r_M = -r_m;
  for (int i = 0; i < kValidationGrid; ++i) {
    double prev = rho[(i + kValidationGrid - 1) % kValidationGrid];
    double next = rho[(i + 1) % kValidationGrid];
    if (rho[i] <= prev && rho[i] <= next) {
      r_m = std::min(r_m, refined_extremum(fn, i, kValidationGrid, false));
    }
    if (rho[i] >= prev && rho[i] >= next) {
      r_M = std::max(r_M, refined_extremum(fn, i, kValidationGrid, true));
    }
  }
  d.r_m = r_m;
  d.r_M = r_M;

  d.area = integrate_adaptive(
      [&](double t) { return 0.5 * fn.h(t) * (fn.h(t) + fn.h2(t)); }, 0.0, kTwoPi,
      1e-10);
  d.perimeter =
      integrate_adaptive([&](double t) { return fn.h(t) + fn.h2(t); }, 0.0, kTwoPi, 1e-10);

  const double pi = std::numbers::pi;
  d.bx0 = -fn.h(pi);
  d.bx1 = fn.h(0.0);
  d.by0 = -fn.h(1.5 * pi);
  d.by1 = fn.h(0.5 * pi);

  if (d.kind == Kind::Trig || d.kind == Kind::Dual) {
    // radial min/max per angular bin, padded by the largest sample-to-sample
    // step so the table only answers when it is certainly right
    std::vector<double> lo(kRadialBins, std::numeric_limits<double>::infinity());
    std::vector<double> hi(kRadialBins, -std::numeric_limits<double>::infinity());
    double max_step = 0.0;
    double prev_r = 0.0;
    for (int i = 0; i <= kRadialSamples; ++i) {
      double t = kTwoPi * i / kRadialSamples;
      double h = fn.h(t), h1 = fn.h1(t);
      Point2 u = unit_vector(t);
      Point2 x{h * u.x - h1 * u.y, h * u.y + h1 * u.x};
      double rr = norm(x);
      double alpha = std::atan2(x.y, x.x);
      if (alpha < 0.0) alpha += kTwoPi;
      int b = std::min(kRadialBins - 1,
                       static_cast<int>(alpha / kTwoPi * kRadialBins));
      lo[b] = std::min(lo[b], rr);
      hi[b] = std::max(hi[b], rr);
      if (i > 0) max_step = std::max(max_step, std::abs(rr - prev_r));
      prev_r = rr;
    }
    double pad = 2.0 * max_step + 1e-12;
    d.radial_lo.resize(kRadialBins);
    d.radial_hi.resize(kRadialBins);
    for (int b = 0; b < kRadialBins; ++b) {
      double l = std::numeric_limits<double>::infinity();
      double h = -l;
      for (int off = -1; off <= 1; ++off) {
        int nb = (b + off + kRadialBins) % kRadialBins;
        l = std::min(l, lo[nb]);
        h = std::max(h, hi[nb]);
      }
      d.radial_lo[b] = std::isfinite(l) ? l - pad : 0.0;
      d.radial_hi[b] = std::isfinite(h) ? h + pad
                                        : std::numeric_limits<double>::infinity();
    }
  }
}

std::shared_ptr<Data> build(std::unique_ptr<const SupportFn> fn, Kind kind,
                            std::string spec) {
  auto d = std::make_shared<Data>();
  d->fn = std::move(fn);
  d->kind = kind;
  d->spec = std::move(spec);
  finalize(*d);
  return d;
}

std::string trim_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// Dual support evaluator lives outside the anonymous namespace because it
// owns a ConvexBody.
namespace {
struct DualFn final : SupportFn {
  ConvexBody base;
  double r;
  DualFn(ConvexBody b, double r_) : base(std::move(b)), r(r_) {}
  double h(double t) const override { return r - base.support(t + std::numbers::pi); }
  double h1(double t) const override {
    return -base.support_deriv(t + std::numbers::pi);
  }
  double h2(double t) const override {
    return -base.support_deriv2(t + std::numbers::pi);
  }
};
}  // namespace

ConvexBody ConvexBody::make_disc(double radius) {
  if (!(radius > 0.0)) throw_validation("BodySpecParse", "disc radius must be positive");
  auto d = build(std::make_unique<DiscFn>(radius), Kind::Disc, "disc:" + trim_real(radius));
  d->disc_radius = radius;
  return ConvexBody(d);
}

ConvexBody ConvexBody::make_ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw_validation("BodySpecParse", "ellipse semi-axes must be positive");
  }
  auto d = build(std::make_unique<EllipseFn>(a, b), Kind::Ellipse,
                 "ellipse:" + trim_real(a) + "," + trim_real(b));
  d->ell_a = a;
  d->ell_b = b;
  return ConvexBody(d);
}

ConvexBody ConvexBody::make_constant_width(double width, double b3) {
  std::vector<double> coeffs{0.5 * width, 0.0, 0.0, 0.0, 0.0, b3};
  return ConvexBody(build(std::make_unique<TrigFn>(std::move(coeffs)), Kind::Trig,
                          "cw:" + trim_real(width) + "," + trim_real(b3)));
}

ConvexBody ConvexBody::make_trig(std::vector<double> coeffs) {
  if (coeffs.empty()) throw_validation("BodySpecParse", "trig body needs a0");
  std::string spec = "trig:" + trim_real(coeffs[0]);
  for (std::size_t i = 1; i < coeffs.size(); ++i) spec += "," + trim_real(coeffs[i]);
  return ConvexBody(build(std::make_unique<TrigFn>(std::move(coeffs)), Kind::Trig, spec));
}

ConvexBody ConvexBody::make_dual(const ConvexBody& base, double r) {
  double r_M = base.sliding_radius();
  if (!(r > r_M)) {
    throw_validation("DualInfeasible",
                     "r-dual requires r * kappa_min > 1, i.e. r > r_M = " +
                         std::to_string(r_M) + " (got r = " + std::to_string(r) + ")");
  }
  return ConvexBody(build(std::make_unique<DualFn>(base, r), Kind::Dual,
                          "dual(" + base.spec_string() + ";r=" + trim_real(r) + ")"));
}

namespace {

[[noreturn]] void parse_fail(std::string_view spec, std::size_t pos, const std::string& what) {
  throw_validation("BodySpecParse", "'" + std::string(spec) + "' at position " +
                                        std::to_string(pos) + ": " + what);
}

std::vector<double> parse_reals(std::string_view spec, std::size_t offset) {
  std::vector<double> vals;
  std::string_view rest = spec.substr(offset);
  std::size_t pos = offset;
  while (true) {
    std::size_t comma = rest.find(',');
    std::string_view tok = comma == std::string_view::npos ? rest : rest.substr(0, comma);
    if (tok.empty()) parse_fail(spec, pos, "expected a decimal real");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      parse_fail(spec, pos + (ptr - tok.data()), "expected a decimal real");
    }
    if (!std::isfinite(v)) parse_fail(spec, pos, "value must be finite");
    vals.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    pos += comma + 1;
  }
  return vals;
}

}  // namespace

ConvexBody ConvexBody::parse(std::string_view spec) {
  std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    parse_fail(spec, spec.size(), "expected ':' after the body kind");
  }
  std::string_view kind = spec.substr(0, colon);
  auto vals = parse_reals(spec, colon + 1);
  if (kind == "disc") {
    if (vals.size() != 1) parse_fail(spec, colon + 1, "disc takes exactly one radius");
    return make_disc(vals[0]);
  }
  if (kind == "ellipse") {
    if (vals.size() != 2) parse_fail(spec, colon + 1, "ellipse takes a,b");
    return make_ellipse(vals[0], vals[1]);
  }
  if (kind == "cw") {
    if (vals.size() != 2) parse_fail(spec, colon + 1, "cw takes w,b3");
    return make_constant_width(vals[0], vals[1]);
  }
  if (kind == "trig") {
    if (vals.size() % 2 == 0) {
      parse_fail(spec, colon + 1, "trig takes a0 followed by (ak,bk) pairs");
    }
    return make_trig(std::move(vals));
  }
  parse_fail(spec, 0, "unknown body kind '" + std::string(kind) + "'");
}

double ConvexBody::support(double theta) const { return data_->fn->h(theta); }
double ConvexBody::support_deriv(double theta) const { return data_->fn->h1(theta); }
double ConvexBody::support_deriv2(double theta) const { return data_->fn->h2(theta); }

double ConvexBody::curvature_radius(double theta) const {
  return data_->fn->h(theta) + data_->fn->h2(theta);
}

Point2 ConvexBody::boundary_point(double theta) const {
  double h = data_->fn->h(theta);
  double h1 = data_->fn->h1(theta);
  Point2 u = unit_vector(theta);
  return {h * u.x - h1 * u.y, h * u.y + h1 * u.x};
}

std::pair<double, double> ConvexBody::rolling_radii() const {
  return {data_->r_m, data_->r_M};
}

double ConvexBody::area() const { return data_->area; }
double ConvexBody::perimeter() const { return data_->perimeter; }

double ConvexBody::support_gap(Point2 p) const {
  const SupportFn& fn = *data_->fn;
  auto gap = [&](double t) { return fn.h(t) - p.x * std::cos(t) - p.y * std::sin(t); };
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGapGrid; ++i) {
    double v = gap(kTwoPi * i / kGapGrid);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double step = kTwoPi / kGapGrid;
  double x = golden_section_min(gap, (best - 1) * step, (best + 1) * step, 1e-12);
  return std::min(best_v, gap(x));
}

bool ConvexBody::contains(Point2 p) const {
  const Data& d = *data_;
  switch (d.kind) {
    case Kind::Disc: {
      double rt = d.disc_radius + 1e-12;
      return norm2(p) <= rt * rt;
    }
    case Kind::Ellipse: {
      double u = p.x / d.ell_a, v = p.y / d.ell_b;
      return u * u + v * v <= 1.0 + 1e-11;
    }
    default: {
      double rr = norm(p);
      double alpha = std::atan2(p.y, p.x);
      if (alpha < 0.0) alpha += kTwoPi;
      int b = std::min(kRadialBins - 1, static_cast<int>(alpha / kTwoPi * kRadialBins));
      if (rr <= d.radial_lo[b]) return true;
      if (rr >= d.radial_hi[b]) return false;
      return support_gap(p) >= -1e-12;
    }
  }
}

std::vector<Point2> ConvexBody::sample_uniform(RngStream& rng, std::size_t count,
                                               std::uint64_t* proposals) const {
  const Data& d = *data_;
  std::vector<Point2> out;
  out.reserve(count);
  std::uint64_t tries = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Point2 p;
    do {
      p.x = rng.uniform(d.bx0, d.bx1);
      p.y = rng.uniform(d.by0, d.by1);
      ++tries;
    } while (!contains(p));
    out.push_back(p);
  }
  if (proposals) *proposals = tries;
  return out;
}

const std::string& ConvexBody::spec_string() const { return data_->spec; }

bool ConvexBody::is_constant_width(double* width) const {
  const SupportFn& fn = *data_->fn;
  double w = fn.h(0.0) + fn.h(std::numbers::pi);
  for (int i = 0; i < 512; ++i) {
    double t = kTwoPi * i / 512;
    if (std::abs(fn.h(t) + fn.h(t + std::numbers::pi) - w) > 1e-9) return false;
  }
  if (width) *width = w;
  return true;
}

bool ConvexBody::is_disc(double* radius) const {
  if (data_->kind != Kind::Disc) return false;
  if (radius) *radius = data_->disc_radius;
  return true;
}

}  // namespace spindle
