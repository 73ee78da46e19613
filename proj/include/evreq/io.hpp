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

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "evreq/search.hpp"

namespace evreq {

// Flat key = value configuration with "p/q" rational literals. Floats are
// rejected everywhere; unknown keys are errors. Recognized keys:
//   rho, mu0, pi, c, k        model parameters
//   grid_c, grid_k            comma-separated rational lists (regions)
//   out_dir                   output directory
//   jobs                      worker threads (0 chooses automatically)
//   seed, points              randomized verification runs
struct RunConfig {
  std::map<std::string, std::string> values;

  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key) const;
  Rat rat(const std::string& key) const;
  std::vector<Rat> rat_list(const std::string& key) const;
};

std::vector<Rat> parse_rat_list(const std::string& text);

nlohmann::json to_json(const Mechanism& m);
nlohmann::json to_json(const TestingPolicy& p);
nlohmann::json to_json(const AgentStrategy& s);
nlohmann::json to_json(const Params& p);
nlohmann::json to_json(const Thresholds& t);
nlohmann::json to_json(const OptimumResult& r);
nlohmann::json to_json(const ClosedFormResult& r);
nlohmann::json to_json(const ConstraintReport& r);
nlohmann::json to_json(const VerificationReport& r);

// RegionReport CSV, one row per grid cell; columns:
// rho,mu0,pi,c,k,gamma,kappa,label,closed_form_W,brute_force_W,match,canonical_mechanism_index
std::string region_csv(const std::vector<RegionReport>& reports);

// Byte-deterministic SVG heatmap of a (c, k) sweep: one rectangle per cell
// colored by region label, mismatching cells outlined, legend below.
std::string region_svg(const std::vector<RegionReport>& reports, int n_cols, int n_rows);

void write_file(const std::string& path, const std::string& contents);

}  // namespace evreq
