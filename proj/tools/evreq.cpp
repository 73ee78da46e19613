// Copyright 2026 The evreq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "evreq/io.hpp"
#include "evreq/sampling.hpp"

namespace {

using namespace evreq;

// Exit codes: 0 success, 1 bad usage or configuration, 2 a verified
// prediction disagrees with the brute-force oracle (or a claim fails).
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitMismatch = 2;

struct CommonOpts {
  std::string config_path;
  std::string rho, mu0, pi, c, k;
  std::string out_dir = ".";
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_costs) {
  cmd->add_option("--config", opts.config_path, "flat key=value config file");
  cmd->add_option("--rho", opts.rho, "state persistence, rational in (1/2,1)");
  cmd->add_option("--mu0", opts.mu0, "prior, rational in (0,1)");
  cmd->add_option("--pi", opts.pi, "free-signal probability, rational in [0,1)");
  if (with_costs) {
    cmd->add_option("--c", opts.c, "agent test cost, rational >= 0");
    cmd->add_option("--k", opts.k, "principal test cost, rational >= 0");
  }
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--jobs", opts.jobs, "worker threads (0 = EVREQ_JOBS or hardware)");
}

RunConfig merged_config(const CommonOpts& opts) {
  RunConfig config;
  if (!opts.config_path.empty()) config = RunConfig::load(opts.config_path);
  const auto override_key = [&](const std::string& key, const std::string& value) {
    if (!value.empty()) config.values[key] = value;
  };
  override_key("rho", opts.rho);
  override_key("mu0", opts.mu0);
  override_key("pi", opts.pi);
  override_key("c", opts.c);
  override_key("k", opts.k);
  return config;
}

Params params_from(const RunConfig& config) {
  return Params::make(config.rat("rho"), config.rat("mu0"), config.rat("pi"), config.rat("c"),
                      config.rat("k"));
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::filesystem::create_directories(path);
  return path;
}

int run_solve(const CommonOpts& opts) {
  const RunConfig config = merged_config(opts);
  const Params p = params_from(config);
  const auto out = ensure_out_dir(opts.out_dir);

  const OptimumResult strategic = brute_force_optimum(p, SolveMode::kStrategic, opts.jobs);
  const OptimumResult noagency = brute_force_optimum(p, SolveMode::kNoAgency, opts.jobs);
  const ClosedFormResult closed = optimal_closed_form(p);

  std::string match = "n/a";
  if (closed.mechanism) {
    bool ok = *closed.predicted_w == strategic.best_w &&
              std::binary_search(strategic.argmax.begin(), strategic.argmax.end(),
                                 encode(*closed.mechanism));
    if (closed.tie_mechanism) {
      ok = ok && std::binary_search(strategic.argmax.begin(), strategic.argmax.end(),
                                    encode(*closed.tie_mechanism));
    }
    match = ok ? "true" : "false";
  }

  const Mechanism canonical = decode(strategic.canonical);
  const BestResponse br = best_response(p, canonical);
  const OutcomeDistribution dist = play(p, canonical, br.strategy);

  nlohmann::json summary{{"params", to_json(p)},
                         {"thresholds", to_json(thresholds(p))},
                         {"region", to_string(classify_region(p))},
                         {"assign_bias_case_feasible", assign_bias_case_feasible(p)},
                         {"strategic", to_json(strategic)},
                         {"noagency", to_json(noagency)},
                         {"closed_form", to_json(closed)},
                         {"match", match}};
  write_file((out / "solve.json").string(), summary.dump(2) + "\n");
  write_file((out / "best_response.json").string(), to_json(br.strategy).dump(2) + "\n");
  write_file((out / "outcomes.csv").string(), to_csv(dist));

  std::cout << "region " << to_string(classify_region(p)) << ", strategic W "
            << strategic.best_w.str() << ", noagency W " << noagency.best_w.str() << ", match "
            << match << "\n";
  return match == "false" ? kExitMismatch : kExitOk;
}

int run_verify(const CommonOpts& opts, unsigned seed, int points) {
  const RunConfig config = merged_config(opts);
  const auto out = ensure_out_dir(opts.out_dir);

  std::vector<Params> targets;
  if (config.has("rho") || config.has("mu0") || config.has("pi") || config.has("c") ||
      config.has("k")) {
    targets.push_back(params_from(config));
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < points; ++i) targets.push_back(sample_params(rng));
  }

  nlohmann::json all = nlohmann::json::array();
  bool ok = true;
  for (const Params& p : targets) {
    const VerificationReport report = verify_claims(p, opts.jobs);
    all.push_back(to_json(report));
    if (!report.all_passed()) {
      ok = false;
      std::cerr << "FAILED claims at rho=" << p.rho.str() << " mu0=" << p.mu0.str()
                << " pi=" << p.pi.str() << " c=" << p.c.str() << " k=" << p.k.str() << ":";
      for (const auto& claim : report.claims) {
        if (claim.applicable && !claim.informational && !claim.passed)
          std::cerr << ' ' << claim.id;
      }
      std::cerr << '\n';
    }
    for (const auto& claim : report.claims) {
      if (claim.informational && claim.applicable && !claim.passed) {
        std::cout << "note: " << claim.id << ": " << claim.detail << '\n';
      }
    }
  }
  write_file((out / "verification.json").string(), all.dump(2) + "\n");
  std::cout << (ok ? "all applicable claims passed" : "some claims FAILED") << " ("
            << targets.size() << " parameter points)\n";
  return ok ? kExitOk : kExitMismatch;
}

int run_regions(const CommonOpts& opts, const std::string& grid_c_arg,
                const std::string& grid_k_arg) {
  RunConfig config = merged_config(opts);
  if (!grid_c_arg.empty()) config.values["grid_c"] = grid_c_arg;
  if (!grid_k_arg.empty()) config.values["grid_k"] = grid_k_arg;
  const auto out = ensure_out_dir(opts.out_dir);

  const Params base = Params::make(config.rat("rho"), config.rat("mu0"), config.rat("pi"),
                                   config.has("c") ? config.rat("c") : Rat(0),
                                   config.has("k") ? config.rat("k") : Rat(0));
  const std::vector<Rat> grid_c = config.rat_list("grid_c");
  const std::vector<Rat> grid_k = config.rat_list("grid_k");

  std::vector<std::pair<Rat, Rat>> grid;
  for (const Rat& k : grid_k) {
    for (const Rat& c : grid_c) grid.emplace_back(c, k);
  }
  const std::vector<RegionReport> reports = sweep(base, grid, opts.jobs);
  write_file((out / "regions.csv").string(), region_csv(reports));
  write_file((out / "regions.svg").string(),
             region_svg(reports, static_cast<int>(grid_c.size()),
                        static_cast<int>(grid_k.size())));

  int mismatches = 0;
  for (const auto& r : reports) {
    if (r.closed_form_in_argmax && !*r.closed_form_in_argmax) ++mismatches;
  }
  std::cout << reports.size() << " cells, " << mismatches << " oracle mismatches\n";
  return mismatches == 0 ? kExitOk : kExitMismatch;
}

int run_show_mech(int index) {
  std::cout << to_json(decode(index)).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver and verification workbench for two-period evidence requests"};
  app.require_subcommand(1);

  CommonOpts solve_opts, verify_opts, regions_opts;
  unsigned seed = 0;
  int points = 100;
  std::string grid_c_arg, grid_k_arg;
  int mech_index = 0;

  CLI::App* solve = app.add_subcommand("solve", "brute-force optima and closed-form prediction");
  add_common(solve, solve_opts, true);

  CLI::App* verify = app.add_subcommand("verify", "machine-check every applicable claim");
  add_common(verify, verify_opts, true);
  verify->add_option("--seed", seed, "seed for randomized parameter points");
  verify->add_option("--points", points, "number of random points when no point is given");

  CLI::App* regions = app.add_subcommand("regions", "classify a (c, k) grid and emit CSV + SVG");
  add_common(regions, regions_opts, false);
  regions->add_option("--grid-c", grid_c_arg, "comma-separated rational c grid");
  regions->add_option("--grid-k", grid_k_arg, "comma-separated rational k grid");

  CLI::App* show = app.add_subcommand("show-mech", "decode a mechanism index");
  show->add_option("index", mech_index, "mechanism index in [0, 8191]")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(solve_opts);
    if (verify->parsed()) return run_verify(verify_opts, seed, points);
    if (regions->parsed()) return run_regions(regions_opts, grid_c_arg, grid_k_arg);
    if (show->parsed()) return run_show_mech(mech_index);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
