#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spindle/asymptotics.hpp"
#include "spindle/body.hpp"
#include "spindle/cap.hpp"
#include "spindle/dual.hpp"
#include "spindle/errors.hpp"
#include "spindle/hull.hpp"
#include "spindle/mc.hpp"
#include "spindle/version.hpp"

namespace {

using nlohmann::json;
using namespace spindle;

std::vector<Point2> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_validation("BadInput", "cannot open '" + path + "'");
  std::vector<Point2> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find_first_not_of("xy, \t") == std::string::npos) continue;
    std::istringstream ss(line);
    std::string xs, ys;
    if (!std::getline(ss, xs, ',') || !std::getline(ss, ys)) {
      throw_validation("BadInput",
                       path + ":" + std::to_string(lineno) + ": expected 'x,y'");
    }
    try {
      pts.push_back({std::stod(xs), std::stod(ys)});
    } catch (const std::exception&) {
      throw_validation("BadInput",
                       path + ":" + std::to_string(lineno) + ": expected 'x,y' reals");
    }
  }
  return pts;
}

void emit(const std::string& out_path, const std::string& text) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw_validation("BadOutput", "cannot write '" + out_path + "'");
  out << body;
}

void echo_config(const json& cfg) { std::cerr << "config: " << cfg.dump() << "\n"; }

std::vector<std::size_t> parse_n_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(tok)));
    } catch (const std::exception&) {
      throw_validation("BadConfig", "bad n value '" + tok + "'");
    }
  }
  if (out.empty()) throw_validation("BadConfig", "empty n list");
  return out;
}

// Merge values from a --config JSON file into argv as trailing --key=value
// tokens for keys not given explicitly; explicit flags always win.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw_validation("BadInput", "cannot open config '" + path + "'");
  json cfg = json::parse(in, nullptr, true, true);
  if (!cfg.is_object()) throw_validation("BadInput", "config must be a JSON object");

  auto given = [&](const std::string& key) {
    std::string flag = "--" + key;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };

  std::vector<std::string> merged = args;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (given(it.key())) continue;
    const json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) merged.push_back("--" + it.key());
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) {
        if (!joined.empty()) joined += ",";
        joined += e.is_string() ? e.get<std::string>() : e.dump();
      }
      merged.push_back("--" + it.key() + "=" + joined);
    } else if (v.is_string()) {
      merged.push_back("--" + it.key() + "=" + v.get<std::string>());
    } else {
      merged.push_back("--" + it.key() + "=" + v.dump());
    }
  }
  return merged;
}

json limits_to_json(const LimitConstants& lc) {
  json j{{"model", model_name(lc.model)}, {"c_f0", lc.c_f0}, {"c_area", lc.c_area}};
  if (lc.has_perim) j["c_perim"] = lc.c_perim;
  return j;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"spindle-convex geometry engine and Monte Carlo laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;

  // hull
  auto* hull_cmd = app.add_subcommand("hull", "r-hull of a CSV point set");
  std::string hull_input, hull_out;
  double hull_r = 1.0;
  bool hull_oracle = false;
  hull_cmd->add_option("--config", config_path, "JSON config file; flags win");
  hull_cmd->add_option("--input", hull_input, "CSV of x,y rows")->required();
  hull_cmd->add_option("--r", hull_r, "arc radius")->required();
  hull_cmd->add_flag("--oracle", hull_oracle, "use the brute-force reference");
  hull_cmd->add_option("--out", hull_out, "output path (default stdout)");

  // caps
  auto* caps_cmd = app.add_subcommand("caps", "disc-cap measures and Jacobians");
  std::string caps_body, caps_out;
  double caps_r = 1.0, caps_theta = 0.0, caps_t = 0.1;
  caps_cmd->add_option("--config", config_path, "JSON config file; flags win");
  caps_cmd->add_option("--body", caps_body, "body spec")->required();
  caps_cmd->add_option("--r", caps_r, "cutting radius")->required();
  caps_cmd->add_option("--theta", caps_theta, "outer normal angle")->required();
  caps_cmd->add_option("--t", caps_t, "cap height")->required();
  caps_cmd->add_option("--out", caps_out, "output path (default stdout)");

  // limits
  auto* limits_cmd = app.add_subcommand("limits", "closed-form limit constants");
  std::string limits_body, limits_model = "inscribed", limits_out;
  double limits_r = 1.0;
  limits_cmd->add_option("--config", config_path, "JSON config file; flags win");
  limits_cmd->add_option("--body", limits_body, "body spec")->required();
  limits_cmd->add_option("--r", limits_r, "radius")->required();
  limits_cmd->add_option("--model", limits_model, "inscribed|circle|circumscribed")
      ->required();
  limits_cmd->add_option("--out", limits_out, "output path (default stdout)");

  // dual-check
  auto* dual_cmd = app.add_subcommand("dual-check", "r-dual identity residuals");
  std::string dual_body, dual_out;
  double dual_r = 1.0;
  dual_cmd->add_option("--config", config_path, "JSON config file; flags win");
  dual_cmd->add_option("--body", dual_body, "body spec")->required();
  dual_cmd->add_option("--r", dual_r, "radius")->required();
  dual_cmd->add_option("--out", dual_out, "output path (default stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo expectation/variance runs");
  std::string sim_body, sim_model = "inscribed", sim_n, sim_out;
  double sim_r = 1.0;
  std::size_t sim_reps = 100;
  std::uint64_t sim_seed = 0;
  unsigned sim_workers = 1;
  sim_cmd->add_option("--config", config_path, "JSON config file; flags win");
  sim_cmd->add_option("--body", sim_body, "body spec")->required();
  sim_cmd->add_option("--r", sim_r, "radius")->required();
  sim_cmd->add_option("--model", sim_model, "inscribed|circle|circumscribed")->required();
  sim_cmd->add_option("--n", sim_n, "comma list of sample sizes")->required();
  sim_cmd->add_option("--reps", sim_reps, "replications per n");
  sim_cmd->add_option("--seed", sim_seed, "base seed");
  sim_cmd->add_option("--workers", sim_workers, "worker threads")
      ->envname("SPINDLE_WORKERS");
  sim_cmd->add_option("--out", sim_out, "output CSV path (default stdout)");

  // variance-scan
  auto* scan_cmd = app.add_subcommand("variance-scan", "log-log slope fits over a CSV");
  std::string scan_input, scan_out;
  std::vector<std::string> scan_fields;
  scan_cmd->add_option("--config", config_path, "JSON config file; flags win");
  scan_cmd->add_option("--input", scan_input, "summary CSV from simulate")->required();
  scan_cmd->add_option("--field", scan_fields, "fields to fit (default: all var_*)");
  scan_cmd->add_option("--out", scan_out, "output path (default stdout)");

  // lln
  auto* lln_cmd = app.add_subcommand("lln", "single nested trajectory");
  std::string lln_body, lln_model = "inscribed", lln_out;
  double lln_r = 1.0;
  std::uint64_t lln_seed = 0;
  std::size_t lln_nmax = 1 << 14;
  lln_cmd->add_option("--config", config_path, "JSON config file; flags win");
  lln_cmd->add_option("--body", lln_body, "body spec")->required();
  lln_cmd->add_option("--r", lln_r, "radius")->required();
  lln_cmd->add_option("--model", lln_model, "inscribed|circle")->required();
  lln_cmd->add_option("--seed", lln_seed, "seed");
  lln_cmd->add_option("--n-max", lln_nmax, "largest checkpoint");
  lln_cmd->add_option("--out", lln_out, "output path (default stdout)");

  std::vector<std::string> merged = apply_config_file(args);
  try {
    std::vector<std::string> rev(merged.rbegin(), merged.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    std::cerr << "ERROR BadUsage: " << e.what() << "\n";
    return 2;
  }

  if (*hull_cmd) {
    json cfg{{"subcommand", "hull"},
             {"input", hull_input},
             {"r", hull_r},
             {"oracle", hull_oracle}};
    echo_config(cfg);
    auto pts = read_points_csv(hull_input);
    DiscPolygon dp = hull_oracle ? r_hull_oracle(pts, hull_r) : r_hull(pts, hull_r);
    json verts = json::array();
    for (auto& v : dp.vertices) verts.push_back({v.x, v.y});
    json out{{"version", kVersion}, {"config", cfg},  {"r", hull_r},
             {"vertices", verts},   {"f0", f0(dp)},   {"area", dp.area()},
             {"perimeter", dp.perimeter()}};
    emit(hull_out, out.dump(2));
  } else if (*caps_cmd) {
    json cfg{{"subcommand", "caps"},
             {"body", caps_body},
             {"r", caps_r},
             {"theta", caps_theta},
             {"t", caps_t}};
    echo_config(cfg);
    ConvexBody body = ConvexBody::parse(caps_body);
    CapMeasures m = cap_measures(body, caps_theta, caps_t, caps_r);
    CapCoords ref{caps_theta, caps_t, caps_theta + 2.0, caps_theta - 1.3};
    json out{{"version", kVersion},
             {"config", cfg},
             {"area", m.area},
             {"arc_length", m.arc_length},
             {"jacobian_closed", cap_coords_jacobian(body, ref, caps_r)},
             {"jacobian_fd", cap_coords_jacobian_fd(body, ref, caps_r)},
             {"ref_phi1", ref.phi1},
             {"ref_phi2", ref.phi2}};
    double excess = body.curvature(caps_theta) - 1.0 / caps_r;
    if (excess > 0.0) {
      // small-height normalizations only exist where kappa exceeds 1/r
      double lim_l = 2.0 * std::sqrt(2.0 / excess);
      double lim_a = 4.0 / 3.0 * std::sqrt(2.0 / excess);
      out["arc_length_limit"] = lim_l;
      out["area_limit"] = lim_a;
      out["norm_arc_length_ratio"] = m.arc_length / std::sqrt(caps_t) / lim_l;
      out["norm_area_ratio"] = m.area / std::pow(caps_t, 1.5) / lim_a;
    }
    emit(caps_out, out.dump(2));
  } else if (*limits_cmd) {
    json cfg{{"subcommand", "limits"},
             {"body", limits_body},
             {"r", limits_r},
             {"model", limits_model}};
    echo_config(cfg);
    ConvexBody body = ConvexBody::parse(limits_body);
    Model model = parse_model(limits_model);
    require_model_feasible(body, limits_r, model);
    LimitConstants lc = model == Model::Inscribed ? inscribed_limits(body, limits_r)
                        : model == Model::Circle  ? circle_limits(limits_r)
                                                  : circumscribed_limits(body, limits_r);
    json out{{"version", kVersion}, {"config", cfg}, {"limits", limits_to_json(lc)}};
    emit(limits_out, out.dump(2));
  } else if (*dual_cmd) {
    json cfg{{"subcommand", "dual-check"}, {"body", dual_body}, {"r", dual_r}};
    echo_config(cfg);
    ConvexBody body = ConvexBody::parse(dual_body);
    DualIdentityReport rep = dual_identity_report(body, dual_r);
    ConvexBody dd = r_dual(r_dual(body, dual_r), dual_r);
    double dd_res = 0.0;
    for (int i = 0; i < 1024; ++i) {
      double t = 2.0 * std::numbers::pi * i / 1024;
      dd_res = std::max(dd_res, std::abs(dd.support(t) - body.support(t)));
    }
    json out{{"version", kVersion},
             {"config", cfg},
             {"support_residual", rep.support_residual},
             {"curvature_residual", rep.curvature_residual},
             {"perimeter_residual", rep.perimeter_residual},
             {"area_residual", rep.area_residual},
             {"double_dual_residual", dd_res}};
    double width = 0.0;
    if (body.is_constant_width(&width) && std::abs(width - dual_r) < 1e-9) {
      json rem = json::array();
      for (double p : {1.0 / 3.0, 2.0 / 3.0, 2.0}) {
        double lhs = boundary_integral(body, dual_r, p);
        double rhs =
            std::pow(dual_r, 1.0 - 2.0 * p) * boundary_integral(body, dual_r, 1.0 - p);
        rem.push_back({{"p", p}, {"residual", std::abs(lhs - rhs)}});
      }
      out["constant_width_identity"] = rem;
    }
    emit(dual_out, out.dump(2));
  } else if (*sim_cmd) {
    ExperimentConfig cfg;
    cfg.body_spec = sim_body;
    cfg.r = sim_r;
    cfg.model = parse_model(sim_model);
    cfg.n_values = parse_n_list(sim_n);
    cfg.replications = sim_reps;
    cfg.seed = sim_seed;
    cfg.workers = sim_workers;
    json jcfg{{"subcommand", "simulate"}, {"body", sim_body},  {"r", sim_r},
              {"model", sim_model},       {"n", cfg.n_values}, {"reps", sim_reps},
              {"seed", sim_seed},         {"workers", sim_workers}};
    echo_config(jcfg);
    auto stats = run_experiment(cfg);
    std::ostringstream csv;
    write_summary_csv(csv, cfg, stats);
    emit(sim_out, csv.str());
  } else if (*scan_cmd) {
    json cfg{{"subcommand", "variance-scan"}, {"input", scan_input}};
    echo_config(cfg);
    std::ifstream in(scan_input);
    if (!in) throw_validation("BadInput", "cannot open '" + scan_input + "'");
    SummaryCsv data = read_summary_csv(in);
    std::vector<std::string> fields = scan_fields;
    if (fields.empty()) {
      fields = {"var_f0", "var_missed"};
      if (!data.rows.empty() && data.rows.front().has_perim) {
        fields.push_back("var_perim_diff");
      }
    }
    json fits = json::array();
    for (const auto& f : fields) {
      SlopeFit fit = variance_slope(data.rows, f);
      fits.push_back({{"field", fit.field},
                      {"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"residual", fit.residual},
                      {"n_min", fit.n_min},
                      {"n_max", fit.n_max}});
    }
    json out{{"version", kVersion}, {"config", cfg}, {"model", data.model},
             {"body", data.body},   {"r", data.r},   {"seed", data.seed},
             {"fits", fits}};
    emit(scan_out, out.dump(2));
  } else if (*lln_cmd) {
    json cfg{{"subcommand", "lln"}, {"body", lln_body}, {"r", lln_r},
             {"model", lln_model},  {"seed", lln_seed}, {"n-max", lln_nmax}};
    echo_config(cfg);
    ConvexBody body = ConvexBody::parse(lln_body);
    Model model = parse_model(lln_model);
    if (model == Model::Circumscribed) {
      throw_validation("BadModel", "lln supports inscribed|circle");
    }
    auto rows = lln_trajectory(body, lln_r, model, lln_seed, lln_nmax);
    std::ostringstream csv;
    csv << "# spindle lln " << kVersion << "\n";
    csv << "# model=" << lln_model << " body=" << lln_body
        << " r=" << format_double(lln_r) << " seed=" << lln_seed << " n_max=" << lln_nmax
        << "\n";
    csv << "n,f0,missed,norm_f0,norm_missed\n";
    for (const auto& row : rows) {
      csv << row.n << ',' << format_double(row.f0) << ',' << format_double(row.missed)
          << ',' << format_double(row.norm_f0) << ',' << format_double(row.norm_missed)
          << "\n";
    }
    emit(lln_out, csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const spindle::Error& e) {
    std::cerr << "ERROR " << e.code() << ": " << e.message() << "\n";
    return e.kind() == spindle::ErrorKind::Validation ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "ERROR Internal: " << e.what() << "\n";
    return 3;
  }
}
