#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "spindle/asymptotics.hpp"
#include "spindle/body.hpp"
#include "spindle/dual.hpp"
#include "spindle/errors.hpp"
#include "spindle/hull.hpp"
#include "spindle/mc.hpp"

using namespace spindle;

namespace {
ExperimentConfig small_circle_config() {
  ExperimentConfig cfg;
  cfg.body_spec = "disc:1";
  cfg.r = 1.0;
  cfg.model = Model::Circle;
  cfg.n_values = {50, 120};
  cfg.replications = 6;
  cfg.seed = 314;
  cfg.workers = 1;
  return cfg;
}
}  // namespace

TEST_CASE("config validation") {
  auto cfg = small_circle_config();
  cfg.n_values = {100, 100};
  CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("increasing"), Error);
  cfg = small_circle_config();
  cfg.replications = 1;
  CHECK_THROWS_AS(run_experiment(cfg), Error);
  cfg = small_circle_config();
  cfg.body_spec = "disc:0.9";  // circle model demands R == r
  CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("Infeasible"), Error);
  cfg = small_circle_config();
  cfg.model = Model::Inscribed;
  cfg.body_spec = "ellipse:0.6,0.5";
  cfg.r = 0.7;
  CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("r_M"), Error);
}

TEST_CASE("two replications reproduce the textbook variance") {
  auto cfg = small_circle_config();
  cfg.replications = 2;
  auto stats = run_experiment(cfg);
  REQUIRE(stats.size() == 2);
  auto body = ConvexBody::parse(cfg.body_spec);
  for (const auto& s : stats) {
    Observables a = replicate_once(body, nullptr, cfg.r, cfg.model, s.n, cfg.seed, 0);
    Observables b = replicate_once(body, nullptr, cfg.r, cfg.model, s.n, cfg.seed, 1);
    double mean = 0.5 * (a.f0 + b.f0);
    double var = (a.f0 - mean) * (a.f0 - mean) + (b.f0 - mean) * (b.f0 - mean);
    CHECK(s.mean_f0 == doctest::Approx(mean).epsilon(1e-15));
    CHECK(s.var_f0 == doctest::Approx(var).epsilon(1e-12));
    CHECK(s.se_f0 == doctest::Approx(std::sqrt(s.var_f0 / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("observables are in range") {
  auto body = ConvexBody::parse("disc:1");
  for (std::size_t rep = 0; rep < 40; ++rep) {
    Observables o = replicate_once(body, nullptr, 1.0, Model::Circle, 30, 99, rep);
    CHECK(o.f0 >= 1.0);
    CHECK(o.f0 == std::floor(o.f0));
    CHECK(o.missed >= 0.0);
    CHECK(o.missed <= body.area());
  }
  auto base = ConvexBody::parse("cw:1,0.03");
  auto dual = r_dual(base, 1.0);
  for (std::size_t rep = 0; rep < 40; ++rep) {
    Observables o = replicate_once(base, &dual, 1.0, Model::Circumscribed, 12, 99, rep);
    CHECK(o.f0 >= 1.0);
    CHECK(o.missed >= 0.0);
    CHECK(o.perim_diff >= 0.0);
  }
}

TEST_CASE("worker count never changes the numbers") {
  auto cfg = small_circle_config();
  cfg.n_values = {64, 256};
  cfg.replications = 70;  // spans several merge chunks
  cfg.workers = 1;
  auto s1 = run_experiment(cfg);
  cfg.workers = 3;
  auto s3 = run_experiment(cfg);
  REQUIRE(s1.size() == s3.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i].mean_f0 == s3[i].mean_f0);
    CHECK(s1[i].var_f0 == s3[i].var_f0);
    CHECK(s1[i].mean_missed == s3[i].mean_missed);
    CHECK(s1[i].var_missed == s3[i].var_missed);
  }
  std::ostringstream csv1, csv3;
  cfg.workers = 1;
  write_summary_csv(csv1, cfg, s1);
  cfg.workers = 3;
  write_summary_csv(csv3, cfg, s3);
  CHECK(csv1.str() == csv3.str());
}

TEST_CASE("per-replication streams are keyed on (seed, n, rep)") {
  auto body = ConvexBody::parse("disc:1");
  Observables a = replicate_once(body, nullptr, 1.0, Model::Circle, 40, 1, 0);
  Observables b = replicate_once(body, nullptr, 1.0, Model::Circle, 40, 1, 0);
  CHECK(a.f0 == b.f0);
  CHECK(a.missed == b.missed);
  Observables c = replicate_once(body, nullptr, 1.0, Model::Circle, 40, 2, 0);
  Observables d = replicate_once(body, nullptr, 1.0, Model::Circle, 40, 1, 1);
  CHECK((c.missed != a.missed || d.missed != a.missed));
}

TEST_CASE("circumscribed replications keep the vertex-count identity") {
  auto base = ConvexBody::parse("disc:0.4");
  auto dual = r_dual(base, 1.0);
  for (std::size_t rep = 0; rep < 500; ++rep) {
    RngStream rng(77, 5 + rep % 40, rep);
    auto s = circumscribed_sample(base, dual, 1.0, 5 + rep % 40, rng);
    RngStream rng2(77, 5 + rep % 40, rep);
    auto pts = dual.sample_uniform(rng2, 5 + rep % 40);
    CHECK(s.f0 == f0(r_hull(pts, 1.0)));
  }
}

TEST_CASE("variance_slope on synthetic data") {
  std::vector<SummaryStats> rows;
  for (std::size_t n : {100, 1000, 10000, 100000}) {
    SummaryStats s;
    s.n = n;
    s.var_f0 = 3.0 * std::cbrt(static_cast<double>(n));
    s.var_missed = 2.5;  // flat
    rows.push_back(s);
  }
  auto fit = variance_slope(rows, "var_f0");
  CHECK(fit.slope == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.n_min == 100);
  CHECK(fit.n_max == 100000);
  CHECK(variance_slope(rows, "var_missed").slope == doctest::Approx(0.0).epsilon(1e-12));

  rows.pop_back();
  CHECK_THROWS_WITH_AS(variance_slope(rows, "var_f0"),
                       doctest::Contains("InsufficientPoints"), Error);
  std::vector<SummaryStats> narrow = rows;
  narrow.push_back(rows.back());
  narrow[0].n = 200;
  narrow[3].n = 9000;  // four points but the span stays under two decades
  CHECK_THROWS_AS(variance_slope(narrow, "var_f0"), Error);
  CHECK_THROWS_AS(variance_slope(rows, "nonsense"), Error);
}

TEST_CASE("csv round trip preserves rows and the exact header") {
  auto cfg = small_circle_config();
  auto stats = run_experiment(cfg);
  std::ostringstream out;
  write_summary_csv(out, cfg, stats);
  std::string text = out.str();
  CHECK(text.find("model,body,r,n,reps,seed,mean_f0,se_f0,var_f0,mean_missed,"
                  "se_missed,var_missed,mean_perim_diff,se_perim_diff,var_perim_diff,"
                  "norm_mean_f0,norm_mean_missed,norm_var_f0,norm_var_missed\n") !=
        std::string::npos);
  std::istringstream in(text);
  SummaryCsv parsed = read_summary_csv(in);
  CHECK(parsed.model == "circle");
  CHECK(parsed.body == "disc:1");
  CHECK(parsed.seed == cfg.seed);
  REQUIRE(parsed.rows.size() == stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    CHECK(parsed.rows[i].n == stats[i].n);
    CHECK(parsed.rows[i].mean_f0 == stats[i].mean_f0);   // %.17g round trip
    CHECK(parsed.rows[i].var_missed == stats[i].var_missed);
    CHECK_FALSE(parsed.rows[i].has_perim);
  }

  // a body spec with a comma survives quoting
  ExperimentConfig ecfg;
  ecfg.body_spec = "ellipse:0.6,0.5";
  ecfg.r = 1.0;
  ecfg.model = Model::Inscribed;
  ecfg.n_values = {40};
  ecfg.replications = 3;
  ecfg.seed = 5;
  ecfg.workers = 1;
  auto estats = run_experiment(ecfg);
  std::ostringstream eo;
  write_summary_csv(eo, ecfg, estats);
  std::istringstream ei(eo.str());
  CHECK(read_summary_csv(ei).body == "ellipse:0.6,0.5");
}

TEST_CASE("normalization columns are keyed on the model") {
  auto cfg = small_circle_config();
  auto stats = run_experiment(cfg);
  for (const auto& s : stats) {
    auto dn = static_cast<double>(s.n);
    CHECK(s.norm_mean_f0 == s.mean_f0);
    CHECK(s.norm_mean_missed == doctest::Approx(s.mean_missed * dn).epsilon(1e-15));
    CHECK(s.norm_var_missed == doctest::Approx(s.var_missed * dn * dn).epsilon(1e-15));
  }
  ExperimentConfig ecfg = small_circle_config();
  ecfg.body_spec = "ellipse:0.6,0.5";
  ecfg.model = Model::Inscribed;
  auto estats = run_experiment(ecfg);
  for (const auto& s : estats) {
    auto dn = static_cast<double>(s.n);
    CHECK(s.norm_mean_f0 ==
          doctest::Approx(s.mean_f0 * std::pow(dn, -1.0 / 3.0)).epsilon(1e-15));
    CHECK(s.norm_var_missed ==
          doctest::Approx(s.var_missed * std::pow(dn, 5.0 / 3.0)).epsilon(1e-15));
  }
}

TEST_CASE("lln trajectory normalizations and determinism") {
  auto disc = ConvexBody::parse("disc:1");
  auto rows = lln_trajectory(disc, 1.0, Model::Circle, 99, 4096);
  REQUIRE(!rows.empty());
  CHECK(rows.front().n == 16);
  CHECK(rows.back().n == 4096);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].n == 2 * rows[i - 1].n);
  for (const auto& row : rows) {
    CHECK(row.norm_f0 == row.f0);  // circle keeps f0 unnormalized
    CHECK(row.f0 >= 2.0);
  }
  // the tail fluctuates around pi^2/2; a single path stays within a few sd
  CHECK(std::abs(rows.back().norm_f0 - 4.9348) < 3.5);

  auto again = lln_trajectory(disc, 1.0, Model::Circle, 99, 4096);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].f0 == again[i].f0);
    CHECK(rows[i].missed == again[i].missed);
  }

  auto ell = ConvexBody::parse("ellipse:0.6,0.5");
  auto erows = lln_trajectory(ell, 1.0, Model::Inscribed, 4, 1 << 15);
  auto c_f0 = inscribed_limits(ell, 1.0).c_f0;
  CHECK(std::abs(erows.back().norm_f0 - c_f0) / c_f0 < 0.15);
  auto erows2 = lln_trajectory(ell, 1.0, Model::Inscribed, 5, 1 << 15);
  CHECK(std::abs(erows2.back().norm_f0 - erows.back().norm_f0) <
        0.25 * std::max(erows.back().norm_f0, erows2.back().norm_f0));
}
