// Copyright 2026 The cvhbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cvhbt/core_state.hpp"
#include "cvhbt/errors.hpp"
#include "cvhbt/experiment_sim.hpp"
#include "cvhbt/fock_oracle.hpp"
#include "cvhbt/gaussian_moments.hpp"
#include "cvhbt/hbt_interference.hpp"
#include "cvhbt/hom_temporal.hpp"
#include "cvhbt/io.hpp"

namespace cvhbt::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kDefaultVisibilitySteps = 200;
constexpr int kDefaultDipSteps = 601;
constexpr int kOraclePhaseCount = 12;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Destination for one artifact: --out, else $CVHBT_OUTPUT_DIR/<command>.<ext>,
// else the caller's stream.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::string_view ext, std::ostream& fallback) {
    std::filesystem::path path;
    if (!cfg.out.empty()) {
      path = cfg.out;
    } else if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / (cfg.command + "." + std::string(ext));
    }
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    path_ = path;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw UsageError("cannot open output file " + path.string());
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
  std::filesystem::path path_;
};

std::vector<double> mc_values(const RunConfig& cfg) {
  if (!cfg.mc.empty() && !cfg.mc2.empty()) throw UsageError("--mc and --mc2 are exclusive");
  if (!cfg.mc.empty()) return cfg.mc;
  std::vector<double> out;
  for (double m2 : cfg.mc2) {
    if (!(m2 >= 0.0)) throw UsageError("--mc2 must be >= 0");
    out.push_back(std::sqrt(m2));
  }
  return out;
}

double require_nbar(const RunConfig& cfg) {
  if (!cfg.nbar) throw UsageError(cfg.command + ": --nbar is required");
  return *cfg.nbar;
}

EprParams single_params(const RunConfig& cfg) {
  const double nbar = require_nbar(cfg);
  const auto mcs = mc_values(cfg);
  if (mcs.size() != 1) throw UsageError(cfg.command + ": exactly one --mc or --mc2 is required");
  return EprParams(nbar, mcs.front());
}

std::string format_of(const RunConfig& cfg, std::string_view fallback) {
  return cfg.format.empty() ? std::string(fallback) : cfg.format;
}

json header(const RunConfig& cfg) {
  return json{{"schema_version", kSchemaVersion}, {"command", cfg.command}};
}

// ---------------------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const EprParams p = single_params(cfg);
  const StateClass cls = classify(p);
  json j = header(cfg);
  j["nbar"] = p.nbar();
  j["mc"] = p.mc().real();
  j["mc_abs"] = p.mc_abs();
  j["class"] = std::string(to_string(cls));
  j["pure_mc"] = pure_mc(p.nbar());
  const bool degenerate = p.nbar() == 0.0 && p.mc_abs() == 0.0;
  if (cls == StateClass::Unphysical || degenerate) {
    j["visibility"] = nullptr;
    j["witness_mean"] = nullptr;
  } else {
    j["visibility"] = visibility(p);
    j["witness_mean"] = witness_mean(p).value;
  }
  Sink sink(cfg, "json", out);
  sink.stream() << j.dump(2) << '\n';
  return cls == StateClass::Unphysical ? kUnphysical : kOk;
}

int cmd_witness(const RunConfig& cfg, std::ostream& out) {
  const EprParams p = single_params(cfg);
  const WitnessReport report = witness_mean(p);
  json j = header(cfg);
  j["nbar"] = p.nbar();
  j["mc_abs"] = p.mc_abs();
  j["value"] = report.value;
  j["verdict"] = std::string(to_string(report.verdict));
  j["visibility"] = visibility(p);
  Sink sink(cfg, "json", out);
  sink.stream() << j.dump(2) << '\n';
  return kOk;
}

// Bisection on visibility(|mc|) - 1/2 inside a bracketing grid cell.
double refine_crossing(double nbar, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (visibility(EprParams(nbar, mid)) > kClassicalVisibilityBound ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

int cmd_visibility_scan(const RunConfig& cfg, std::ostream& out) {
  const double nbar = require_nbar(cfg);
  const int steps = cfg.steps.value_or(kDefaultVisibilitySteps);
  if (steps < 2) throw UsageError("--steps must be >= 2");
  if (nbar == 0.0) throw DegenerateState("visibility-scan: nbar = 0 leaves only the vacuum");
  const double top = pure_mc(nbar);

  std::vector<double> mcs, vis;
  for (int i = 0; i < steps; ++i) {
    const double m = i + 1 == steps ? top : top * i / (steps - 1);
    mcs.push_back(m);
    vis.push_back(visibility(EprParams(nbar, m)));
  }
  double crossing = std::nan("");
  for (std::size_t i = 1; i < vis.size(); ++i) {
    if (vis[i - 1] <= kClassicalVisibilityBound && vis[i] > kClassicalVisibilityBound) {
      crossing = refine_crossing(nbar, mcs[i - 1], mcs[i]);
      break;
    }
  }

  const std::vector<std::pair<std::string, std::string>> meta{
      {"schema_version", std::to_string(kSchemaVersion)},
      {"command", cfg.command},
      {"nbar", io::shortest(nbar)},
      {"pure_mc", io::shortest(top)},
      {"classical_bound_visibility", io::shortest(kClassicalVisibilityBound)},
      {"separable_border_mc", io::shortest(nbar)},
      {"refined_crossing_mc", io::shortest(crossing)},
  };
  const std::string fmt = format_of(cfg, "csv");
  Sink sink(cfg, fmt, out);
  if (fmt == "csv") {
    const std::array<std::string, 2> head{"mc", "visibility"};
    const std::array<std::vector<double>, 2> cols{mcs, vis};
    io::write_columns_csv(sink.stream(), meta, head, cols);
  } else {
    json j = header(cfg);
    j["nbar"] = nbar;
    j["pure_mc"] = top;
    j["classical_bound_visibility"] = kClassicalVisibilityBound;
    j["separable_border_mc"] = nbar;
    j["refined_crossing_mc"] = crossing;
    j["mc"] = mcs;
    j["visibility"] = vis;
    sink.stream() << j.dump(2) << '\n';
  }
  return kOk;
}

int cmd_hom_dip(const RunConfig& cfg, std::ostream& out) {
  const double nbar = require_nbar(cfg);
  const auto mcs = mc_values(cfg);
  if (mcs.empty()) throw UsageError("hom-dip: at least one --mc or --mc2 is required");
  const int steps = cfg.steps.value_or(kDefaultDipSteps);
  if (steps < 2) throw UsageError("--steps must be >= 2");
  if (!(cfg.t_min < cfg.t_max)) throw UsageError("--t-min must be below --t-max");

  std::vector<std::pair<std::string, std::string>> meta{
      {"schema_version", std::to_string(kSchemaVersion)},
      {"command", cfg.command},
      {"nbar", io::shortest(nbar)},
      {"classical_bound_p", io::shortest(1.0 - kClassicalVisibilityBound)},
  };
  std::vector<std::string> head{"T"};
  std::vector<std::vector<double>> cols;
  json curves = json::array();
  for (std::size_t c = 0; c < mcs.size(); ++c) {
    const EprParams p(nbar, mcs[c]);
    const DipCurve curve = dip_scan(p, cfg.t_min, cfg.t_max, steps);
    const auto [t0, p_min] = dip_minimum(p);
    if (cols.empty()) cols.push_back(curve.times);
    cols.push_back(curve.values);
    const std::string name = mcs.size() == 1 ? "p" : "p" + std::to_string(c + 1);
    head.push_back(name);
    meta.emplace_back(name + ".mc", io::shortest(p.mc_abs()));
    meta.emplace_back(name + ".p_min", io::shortest(p_min));
    curves.push_back(json{{"column", name},
                          {"mc_abs", p.mc_abs()},
                          {"visibility", visibility(p)},
                          {"t_min_at", t0},
                          {"p_min", p_min},
                          {"p", curve.values}});
  }

  const std::string fmt = format_of(cfg, "csv");
  Sink sink(cfg, fmt, out);
  if (fmt == "csv") {
    io::write_columns_csv(sink.stream(), meta, head, cols);
  } else {
    json j = header(cfg);
    j["nbar"] = nbar;
    j["T"] = cols.front();
    j["curves"] = curves;
    sink.stream() << j.dump(2) << '\n';
  }
  return kOk;
}

double relative_error(double analytic, double exact) {
  const double diff = std::abs(analytic - exact);
  return analytic == 0.0 ? diff : diff / std::abs(analytic);
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<EprParams> grid;
  if (cfg.nbar) {
    const double nbar = *cfg.nbar;
    for (double m : mc_values(cfg)) grid.emplace_back(nbar, m);
    if (grid.empty()) grid.emplace_back(nbar, pure_mc(nbar));
  } else {
    grid = {EprParams(1.0, 0.0),  EprParams(1.0, 1.0),           EprParams(1.0, 1.2),
            EprParams(1.0, std::sqrt(2.0)), EprParams(0.1, 0.1), EprParams(0.1, std::sqrt(0.11))};
  }
  if (!(cfg.tail_tol > 0.0 && cfg.tail_tol < 1.0)) throw UsageError("--tail-tol must be in (0,1)");

  json rows = json::array();
  double worst = 0.0;
  auto add = [&](const EprParams& p, const std::string& quantity, double analytic, double exact) {
    const double rel = relative_error(analytic, exact);
    worst = std::max(worst, rel);
    rows.push_back(json{{"nbar", p.nbar()},
                        {"mc_abs", p.mc_abs()},
                        {"quantity", quantity},
                        {"analytic", analytic},
                        {"fock_exact", exact},
                        {"rel_error", rel}});
  };

  for (const EprParams& p : grid) {
    require_physical(p);
    const int cutoff = std::max(2, truncation_for(p, cfg.tail_tol));
    const FockArray rho = squeezed_thermal_density(p, cutoff, 4.0 * cfg.tail_tol + 1e-14);
    const FourthOrderMoments m = fourth_order_set(p);
    add(p, "<ad ad a a>", m.aa, moment_exact(rho, OperatorWord::parse("ad ad a a")).real());
    add(p, "<bd bd b b>", m.bb, moment_exact(rho, OperatorWord::parse("bd bd b b")).real());
    add(p, "<ad bd a b>", m.ab, moment_exact(rho, OperatorWord::parse("ad bd a b")).real());
    for (int k = 0; k < kOraclePhaseCount; ++k) {
      const double dphi = 2.0 * std::numbers::pi * k / kOraclePhaseCount;
      const double phi2 = 0.25;
      add(p, "hbt(dphi=" + io::shortest(dphi) + ")", hbt_correlation(p, phi2 + dphi, phi2),
          hbt_correlation_exact(rho, phi2 + dphi, phi2));
    }
  }

  const bool pass = worst <= cfg.tol;
  json j = header(cfg);
  j["tail_tol"] = cfg.tail_tol;
  j["tolerance"] = cfg.tol;
  j["max_rel_error"] = worst;
  j["pass"] = pass;
  j["checks"] = rows;
  Sink sink(cfg, "json", out);
  sink.stream() << j.dump(2) << '\n';
  if (!pass) {
    err << "oracle-check: max relative error " << worst << " exceeds " << cfg.tol << '\n';
    return kOracleFailure;
  }
  return kOk;
}

json estimate_json(const VisibilityEstimate& est, Verdict verdict, double k_sigma) {
  return json{{"v_hat", est.v_hat},
              {"sigma_v", est.sigma_v},
              {"baseline_hat", est.baseline_hat},
              {"n_settings", est.n_settings},
              {"seed", est.seed},
              {"clipped", est.clipped},
              {"v_raw", est.v_raw},
              {"k_sigma", k_sigma},
              {"verdict", std::string(to_string(verdict))}};
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const EprParams p = single_params(cfg);
  if (cfg.phases < 3) throw UsageError("--phases must be >= 3");
  if (!(cfg.mean_counts > 0.0)) throw UsageError("--mean-counts must be > 0");
  if (!(cfg.k_sigma > 0.0)) throw UsageError("--k-sigma must be > 0");

  const auto settings = uniform_phases(cfg.phases);
  const auto records = simulate_fringe_counts(p, settings, cfg.mean_counts, cfg.seed);
  const VisibilityEstimate est = fit_visibility(records, cfg.seed);
  const Verdict verdict = decide_entanglement(est, cfg.k_sigma);

  json j = header(cfg);
  j["nbar"] = p.nbar();
  j["mc_abs"] = p.mc_abs();
  j["true_visibility"] = visibility(p);
  j["mean_counts"] = cfg.mean_counts;
  j["estimate"] = estimate_json(est, verdict, cfg.k_sigma);

  const std::string fmt = format_of(cfg, "csv");
  Sink sink(cfg, fmt, out);
  if (fmt == "json") {
    json recs = json::array();
    for (const auto& r : records) {
      recs.push_back(json{{"setting", r.setting},
                          {"expected_rate", r.expected_rate},
                          {"counts", r.counts}});
    }
    j["records"] = recs;
    sink.stream() << j.dump(2) << '\n';
    return kOk;
  }
  io::write_count_records_csv(sink.stream(), records);
  if (sink.path().empty()) {
    sink.stream() << '\n' << j.dump(2) << '\n';
  } else {
    std::filesystem::path json_path = sink.path();
    json_path.replace_extension(".json");
    std::ofstream jf(json_path, std::ios::binary | std::ios::trunc);
    if (!jf) throw UsageError("cannot open output file " + json_path.string());
    jf << j.dump(2) << '\n';
  }
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_mc) {
  sub->add_option("--nbar", cfg.nbar, "Mean photon number per mode")->check(CLI::NonNegativeNumber);
  if (with_mc) {
    auto* mc = sub->add_option("--mc", cfg.mc, "Correlation |mc|");
    auto* mc2 = sub->add_option("--mc2", cfg.mc2, "Correlation |mc|^2")->check(CLI::NonNegativeNumber);
    mc->excludes(mc2);
  }
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "Output path");
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "classify") return cmd_classify(cfg, out);
    if (cfg.command == "witness") return cmd_witness(cfg, out);
    if (cfg.command == "visibility-scan") return cmd_visibility_scan(cfg, out);
    if (cfg.command == "hom-dip") return cmd_hom_dip(cfg, out);
    if (cfg.command == "oracle-check") return cmd_oracle_check(cfg, out, err);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    err << "unknown command '" << cfg.command << "'\n";
    return kInvalidFlags;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidFlags;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidFlags;
  } catch (const UnphysicalParameters& e) {
    err << "unphysical parameters: " << e.what() << '\n';
    return kUnphysical;
  } catch (const DegenerateState& e) {
    err << "degenerate state: " << e.what() << '\n';
    return kUnphysical;
  } catch (const TruncationError& e) {
    err << "oracle truncation: " << e.what() << '\n';
    return kOracleFailure;
  } catch (const FitError& e) {
    err << "fit failed: " << e.what() << '\n';
    return kFitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Second-order interference of continuous-variable EPR states"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* classify_cmd = app.add_subcommand("classify", "Separability class, visibility, witness");
  add_common(classify_cmd, cfg, true);

  auto* witness_cmd = app.add_subcommand("witness", "HBT witness mean");
  add_common(witness_cmd, cfg, true);

  auto* vis_cmd = app.add_subcommand("visibility-scan", "Visibility over |mc| in [0, pure_mc]");
  add_common(vis_cmd, cfg, false);
  vis_cmd->add_option("--steps", cfg.steps, "Grid points");

  auto* dip_cmd = app.add_subcommand("hom-dip", "Coincidence probability p(T)");
  add_common(dip_cmd, cfg, true);
  dip_cmd->add_option("--steps", cfg.steps, "Grid points");
  dip_cmd->add_option("--t-min", cfg.t_min, "Lower end of the T grid");
  dip_cmd->add_option("--t-max", cfg.t_max, "Upper end of the T grid");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Closed forms vs truncated Fock algebra");
  add_common(oracle_cmd, cfg, true);
  oracle_cmd->add_option("--tail-tol", cfg.tail_tol, "Fock truncation tail tolerance");
  oracle_cmd->add_option("--tol", cfg.tol, "Maximum relative error")->check(CLI::PositiveNumber);

  auto* sim_cmd = app.add_subcommand("simulate", "Poisson fringe counts and visibility fit");
  add_common(sim_cmd, cfg, true);
  sim_cmd->add_option("--phases", cfg.phases, "Number of phase settings");
  sim_cmd->add_option("--mean-counts", cfg.mean_counts, "Mean counts per setting");
  sim_cmd->add_option("--seed", cfg.seed, "RNG seed");
  sim_cmd->add_option("--k-sigma", cfg.k_sigma, "Significance multiplier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidFlags;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return execute(cfg, out, err);
}

}  // namespace cvhbt::cli
