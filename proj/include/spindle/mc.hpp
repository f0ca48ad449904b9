#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spindle/asymptotics.hpp"
#include "spindle/body.hpp"

namespace spindle {

struct ExperimentConfig {
  std::string body_spec;
  double r = 1.0;
  Model model = Model::Inscribed;
  std::vector<std::size_t> n_values;  // strictly increasing
  std::size_t replications = 2;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

// Streaming per-n summary. Missed area means A(K \ hull) for the inscribed
// models and A(intersection \ K) for the circumscribed one. Normalized
// columns are keyed on the model: circle uses (n^0, n, n^0, n^2), smooth
// bodies (n^-1/3, n^2/3, n^-1/3, n^5/3).
struct SummaryStats {
  std::size_t n = 0;
  std::size_t reps = 0;
  double mean_f0 = 0.0, se_f0 = 0.0, var_f0 = 0.0;
  double mean_missed = 0.0, se_missed = 0.0, var_missed = 0.0;
  double mean_perim_diff = 0.0, se_perim_diff = 0.0, var_perim_diff = 0.0;
  bool has_perim = false;
  double norm_mean_f0 = 0.0, norm_mean_missed = 0.0;
  double norm_var_f0 = 0.0, norm_var_missed = 0.0;
};

// Observables of one replication; exposed for tests.
struct Observables {
  double f0 = 0.0;
  double missed = 0.0;
  double perim_diff = 0.0;
};

Observables replicate_once(const ConvexBody& body, const ConvexBody* dual, double r,
                           Model model, std::size_t n, std::uint64_t seed,
                           std::size_t rep);

// Runs every (n, replication) cell with per-replication substreams derived
// from (seed, n, rep); workers only change scheduling, never the numbers.
std::vector<SummaryStats> run_experiment(const ExperimentConfig& config);

struct SlopeFit {
  std::string field;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms residual of the log-log fit
  std::size_t n_min = 0, n_max = 0;
};

// Least-squares slope of log(field) against log(n). Requires at least four
// points spanning a factor >= 100 in n.
SlopeFit variance_slope(std::span<const SummaryStats> stats, std::string_view field);

struct TrajectoryRow {
  std::size_t n = 0;
  double f0 = 0.0;
  double missed = 0.0;
  double norm_f0 = 0.0;
  double norm_missed = 0.0;
};

// One nested sample path, hull recomputed at checkpoints n = 16, 32, ..., n_max.
std::vector<TrajectoryRow> lln_trajectory(const ConvexBody& body, double r, Model model,
                                          std::uint64_t seed, std::size_t n_max);

// CSV with a deterministic metadata comment block followed by the exact header
//   model,body,r,n,reps,seed,mean_f0,se_f0,var_f0,mean_missed,se_missed,
//   var_missed,mean_perim_diff,se_perim_diff,var_perim_diff,norm_mean_f0,
//   norm_mean_missed,norm_var_f0,norm_var_missed
// (worker count deliberately omitted: it must not affect output bytes).
void write_summary_csv(std::ostream& out, const ExperimentConfig& config,
                       std::span<const SummaryStats> stats);

struct SummaryCsv {
  std::string model;
  std::string body;
  double r = 0.0;
  std::uint64_t seed = 0;
  std::vector<SummaryStats> rows;
};

SummaryCsv read_summary_csv(std::istream& in);

// Feasibility of (body, r, model); throws a validation error naming the
// violated hypothesis.
void require_model_feasible(const ConvexBody& body, double r, Model model);

std::string format_double(double v);  // shortest round-trip decimal, %.17g

}  // namespace spindle
