#include "spindle/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "spindle/dual.hpp"
#include "spindle/errors.hpp"
#include "spindle/hull.hpp"
#include "spindle/version.hpp"

namespace spindle {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_model_feasible(const ConvexBody& body, double r, Model model) {
  switch (model) {
    case Model::Inscribed:
    case Model::Circumscribed:
      require_r_feasible(body, r);
      return;
    case Model::Circle: {
      double radius = 0.0;
      if (!body.is_disc(&radius) || std::abs(radius - r) > 1e-12 * std::max(1.0, r)) {
        throw_validation("Infeasible",
                         "circle model needs body disc:R with R = r (body " +
                             body.spec_string() + ", r = " + format_double(r) + ")");
      }
      return;
    }
  }
}

Observables replicate_once(const ConvexBody& body, const ConvexBody* dual, double r,
                           Model model, std::size_t n, std::uint64_t seed,
                           std::size_t rep) {
  RngStream rng(seed, n, rep);
  if (model == Model::Circumscribed) {
    CircumscribedSample s = dual ? circumscribed_sample(body, *dual, r, n, rng)
                                 : circumscribed_sample(body, r, n, rng);
    return {static_cast<double>(s.f0), std::max(0.0, s.area_diff),
            std::max(0.0, s.perim_diff)};
  }
  std::vector<Point2> pts = body.sample_uniform(rng, n);
  DiscPolygon dp = r_hull(pts, r);
  return {static_cast<double>(f0(dp)), std::max(0.0, missed_area(body, dp)), 0.0};
}

namespace {

// One-pass mean/variance accumulator with deterministic pairwise merge.
struct Welford {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }
  void merge(const Welford& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    double delta = o.mean - mean;
    std::size_t total = count + o.count;
    mean += delta * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(count) *
                     static_cast<double>(o.count) / static_cast<double>(total);
    count = total;
  }
  double variance() const {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  }
};

struct ChunkAcc {
  Welford f0, missed, perim;
};

void normalize(SummaryStats& s, Model model) {
  auto dn = static_cast<double>(s.n);
  if (model == Model::Circle) {
    s.norm_mean_f0 = s.mean_f0;
    s.norm_mean_missed = s.mean_missed * dn;
    s.norm_var_f0 = s.var_f0;
    s.norm_var_missed = s.var_missed * dn * dn;
  } else {
    s.norm_mean_f0 = s.mean_f0 * std::pow(dn, -1.0 / 3.0);
    s.norm_mean_missed = s.mean_missed * std::pow(dn, 2.0 / 3.0);
    s.norm_var_f0 = s.var_f0 * std::pow(dn, -1.0 / 3.0);
    s.norm_var_missed = s.var_missed * std::pow(dn, 5.0 / 3.0);
  }
}

}  // namespace

std::vector<SummaryStats> run_experiment(const ExperimentConfig& config) {
  if (config.replications < 2) {
    throw_validation("BadConfig", "need at least 2 replications for a variance");
  }
  if (config.n_values.empty()) {
    throw_validation("BadConfig", "need at least one n value");
  }
  for (std::size_t i = 1; i < config.n_values.size(); ++i) {
    if (config.n_values[i] <= config.n_values[i - 1]) {
      throw_validation("BadConfig", "n values must be strictly increasing");
    }
  }
  ConvexBody body = ConvexBody::parse(config.body_spec);
  require_model_feasible(body, config.r, config.model);
  std::optional<ConvexBody> dual;
  if (config.model == Model::Circumscribed) {
    dual.emplace(r_dual(body, config.r));
  }

  unsigned workers = std::max(1u, config.workers);
  constexpr std::size_t kChunk = 32;  // merge order is chunk order, not thread order

  std::vector<SummaryStats> out;
  out.reserve(config.n_values.size());
  for (std::size_t n : config.n_values) {
    std::size_t reps = config.replications;
    std::size_t chunks = (reps + kChunk - 1) / kChunk;
    std::vector<ChunkAcc> acc(chunks);
    std::atomic<std::size_t> next_chunk{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&] {
      try {
        while (true) {
          std::size_t c = next_chunk.fetch_add(1);
          if (c >= chunks) break;
          std::size_t lo = c * kChunk;
          std::size_t hi = std::min(reps, lo + kChunk);
          ChunkAcc& a = acc[c];
          for (std::size_t rep = lo; rep < hi; ++rep) {
            Observables obs = replicate_once(body, dual ? &*dual : nullptr, config.r,
                                             config.model, n, config.seed, rep);
            a.f0.add(obs.f0);
            a.missed.add(obs.missed);
            a.perim.add(obs.perim_diff);
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    };

    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    ChunkAcc total;
    for (const ChunkAcc& a : acc) {
      total.f0.merge(a.f0);
      total.missed.merge(a.missed);
      total.perim.merge(a.perim);
    }

    SummaryStats s;
    s.n = n;
    s.reps = reps;
    s.mean_f0 = total.f0.mean;
    s.var_f0 = total.f0.variance();
    s.se_f0 = std::sqrt(s.var_f0 / static_cast<double>(reps));
    s.mean_missed = total.missed.mean;
    s.var_missed = total.missed.variance();
    s.se_missed = std::sqrt(s.var_missed / static_cast<double>(reps));
    s.has_perim = config.model == Model::Circumscribed;
    if (s.has_perim) {
      s.mean_perim_diff = total.perim.mean;
      s.var_perim_diff = total.perim.variance();
      s.se_perim_diff = std::sqrt(s.var_perim_diff / static_cast<double>(reps));
    }
    normalize(s, config.model);
    out.push_back(s);
  }
  return out;
}

SlopeFit variance_slope(std::span<const SummaryStats> stats, std::string_view field) {
  auto value_of = [&](const SummaryStats& s) -> double {
    if (field == "var_f0") return s.var_f0;
    if (field == "var_missed") return s.var_missed;
    if (field == "var_perim_diff") return s.var_perim_diff;
    if (field == "mean_f0") return s.mean_f0;
    if (field == "mean_missed") return s.mean_missed;
    throw_validation("BadField", "unknown field '" + std::string(field) + "'");
  };
  if (stats.size() < 4) {
    throw_validation("InsufficientPoints", "slope fit needs at least 4 n values");
  }
  std::size_t n_min = stats.front().n, n_max = stats.front().n;
  for (const auto& s : stats) {
    n_min = std::min(n_min, s.n);
    n_max = std::max(n_max, s.n);
  }
  if (static_cast<double>(n_max) < 100.0 * static_cast<double>(n_min)) {
    throw_validation("InsufficientPoints",
                     "slope fit needs n values spanning a factor of at least 100");
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : stats) {
    double v = value_of(s);
    if (!(v > 0.0)) {
      throw_numeric("BadField", "log-log fit needs positive values");
    }
    double x = std::log(static_cast<double>(s.n));
    double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  auto m = static_cast<double>(stats.size());
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double intercept = (sy - slope * sx) / m;

  double rss = 0.0;
  for (const auto& s : stats) {
    double x = std::log(static_cast<double>(s.n));
    double y = std::log(value_of(s));
    double e = y - (slope * x + intercept);
    rss += e * e;
  }
  SlopeFit fit;
  fit.field = std::string(field);
  fit.slope = slope;
  fit.intercept = intercept;
  fit.residual = std::sqrt(rss / m);
  fit.n_min = n_min;
  fit.n_max = n_max;
  return fit;
}

std::vector<TrajectoryRow> lln_trajectory(const ConvexBody& body, double r, Model model,
                                          std::uint64_t seed, std::size_t n_max) {
  require_model_feasible(body, r, model);
  if (n_max < 16) throw_validation("BadConfig", "n_max must be at least 16");
  RngStream rng(seed, 0, 0);
  std::vector<Point2> pts;
  pts.reserve(n_max);
  std::vector<TrajectoryRow> rows;
  std::size_t checkpoint = 16;
  while (true) {
    std::size_t target = std::min(checkpoint, n_max);
    std::vector<Point2> fresh = body.sample_uniform(rng, target - pts.size());
    pts.insert(pts.end(), fresh.begin(), fresh.end());
    DiscPolygon dp = r_hull(pts, r);
    TrajectoryRow row;
    row.n = pts.size();
    row.f0 = static_cast<double>(f0(dp));
    row.missed = std::max(0.0, missed_area(body, dp));
    auto dn = static_cast<double>(row.n);
    if (model == Model::Circle) {
      row.norm_f0 = row.f0;
      row.norm_missed = row.missed * dn;
    } else {
      row.norm_f0 = row.f0 * std::pow(dn, -1.0 / 3.0);
      row.norm_missed = row.missed * std::pow(dn, 2.0 / 3.0);
    }
    rows.push_back(row);
    if (target == n_max) break;
    checkpoint *= 2;
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

constexpr const char* kHeader =
    "model,body,r,n,reps,seed,mean_f0,se_f0,var_f0,mean_missed,se_missed,var_missed,"
    "mean_perim_diff,se_perim_diff,var_perim_diff,norm_mean_f0,norm_mean_missed,"
    "norm_var_f0,norm_var_missed";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void write_summary_csv(std::ostream& out, const ExperimentConfig& config,
                       std::span<const SummaryStats> stats) {
  out << "# spindle simulate " << kVersion << "\n";
  out << "# model=" << model_name(config.model) << " body=" << config.body_spec
      << " r=" << format_double(config.r) << " seed=" << config.seed
      << " reps=" << config.replications << "\n";
  out << "# n_values=";
  for (std::size_t i = 0; i < config.n_values.size(); ++i) {
    if (i) out << ";";
    out << config.n_values[i];
  }
  out << "\n" << kHeader << "\n";
  for (const SummaryStats& s : stats) {
    out << model_name(config.model) << ',' << csv_field(config.body_spec) << ','
        << format_double(config.r) << ',' << s.n << ',' << s.reps << ',' << config.seed
        << ',' << format_double(s.mean_f0) << ',' << format_double(s.se_f0) << ','
        << format_double(s.var_f0) << ',' << format_double(s.mean_missed) << ','
        << format_double(s.se_missed) << ',' << format_double(s.var_missed) << ',';
    if (s.has_perim) {
      out << format_double(s.mean_perim_diff) << ',' << format_double(s.se_perim_diff)
          << ',' << format_double(s.var_perim_diff);
    } else {
      out << ",,";
    }
    out << ',' << format_double(s.norm_mean_f0) << ',' << format_double(s.norm_mean_missed)
        << ',' << format_double(s.norm_var_f0) << ',' << format_double(s.norm_var_missed)
        << "\n";
  }
}

SummaryCsv read_summary_csv(std::istream& in) {
  SummaryCsv out;
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    if (!seen_header) {
      if (line != kHeader) {
        throw_validation("BadCsv", "unexpected header: " + line);
      }
      seen_header = true;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 19) {
      throw_validation("BadCsv", "expected 19 fields, got " + std::to_string(f.size()));
    }
    out.model = f[0];
    out.body = f[1];
    out.r = std::stod(f[2]);
    SummaryStats s;
    s.n = static_cast<std::size_t>(std::stoull(f[3]));
    s.reps = static_cast<std::size_t>(std::stoull(f[4]));
    out.seed = std::stoull(f[5]);
    s.mean_f0 = std::stod(f[6]);
    s.se_f0 = std::stod(f[7]);
    s.var_f0 = std::stod(f[8]);
    s.mean_missed = std::stod(f[9]);
    s.se_missed = std::stod(f[10]);
    s.var_missed = std::stod(f[11]);
    s.has_perim = !f[12].empty();
    if (s.has_perim) {
      s.mean_perim_diff = std::stod(f[12]);
      s.se_perim_diff = std::stod(f[13]);
      s.var_perim_diff = std::stod(f[14]);
    }
    s.norm_mean_f0 = std::stod(f[15]);
    s.norm_mean_missed = std::stod(f[16]);
    s.norm_var_f0 = std::stod(f[17]);
    s.norm_var_missed = std::stod(f[18]);
    out.rows.push_back(s);
  }
  if (!seen_header) {
    throw_validation("BadCsv", "no header line found");
  }
  return out;
}

}  // namespace spindle
