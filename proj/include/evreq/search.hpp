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

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "evreq/mechanisms.hpp"
#include "evreq/outcomes.hpp"

namespace evreq {

// All 8192 mechanisms in ascending index order.
std::vector<Mechanism> enumerate_all();

enum class SolveMode { kStrategic, kNoAgency };
const char* to_string(SolveMode mode);

struct OptimumResult {
  SolveMode mode;
  Rat best_w;
  std::vector<int> argmax;  // ascending mechanism indices
  int canonical;            // smallest index in argmax
};

// Exhaustive optimum over the 13-bit mechanism space. Strategic mode scores
// each mechanism by the principal's payoff under the agent's best response;
// NoAgency mode assumes obedient, fully disclosing play.
OptimumResult brute_force_optimum(const Params& p, SolveMode mode, int jobs = 1);

// Principal's payoff from m under the agent's best response.
Rat strategic_value(const Params& p, const Mechanism& m);

// Exact atom-by-atom equality of two play distributions.
bool same_play(const OutcomeDistribution& a, const OutcomeDistribution& b);

// Testing policies that, paired with efficient assignments and made forcing,
// leave the best response obedient and fully disclosing on path.
std::vector<TestingPolicy> full_disclosure_set(const Params& p);

// The compliant counterpart of gaming_strategy: skip the first-period test,
// disclose only a favorable free result, test after a missing report, and
// stay put after concealing a bad draw.
AgentStrategy compliant_wait_strategy();
// As above, but re-test after concealing a bad first draw.
AgentStrategy compliant_wait_retest_strategy();

struct DeviationComparison {
  Rat deviation_value;
  Rat compliant_value;
  bool strictly_profitable;
};

// Exact payoff comparison of a deviation against its compliant counterpart,
// both played against the forcing baseline mechanism.
DeviationComparison gaming_comparison(const Params& p);
DeviationComparison retest_gaming_comparison(const Params& p);

struct ClaimResult {
  std::string id;
  bool applicable = false;
  bool passed = false;
  bool informational = false;  // reported but never gates the verdict
  std::string detail;
};

struct VerificationReport {
  Params params;
  std::vector<ClaimResult> claims;

  // Every applicable, non-informational claim passed.
  bool all_passed() const;
  const ClaimResult* find(const std::string& id) const;
};

// Confront every closed-form statement that applies at this point with the
// brute-force oracle. Structural claims (relabeling totality, the IC
// constraint system, sensitivity bounds) run at every point.
VerificationReport verify_claims(const Params& p, int jobs = 1);

struct RegionReport {
  Params params;
  Rat gamma;
  Rat kappa;
  RegionLabel label;
  std::optional<Rat> closed_form_w;
  Rat brute_force_w;
  std::optional<bool> closed_form_in_argmax;
  int canonical_index;
  std::string notes;
};

// One report per (c, k) grid cell over the base parameters, in grid order.
std::vector<RegionReport> sweep(const Params& base,
                                const std::vector<std::pair<Rat, Rat>>& grid_ck, int jobs = 1);

// jobs <= 0 resolves to the EVREQ_JOBS environment variable, then to the
// hardware concurrency.
int resolve_jobs(int jobs);

template <typename F>
void parallel_for(int n, int jobs, F&& body) {
  jobs = resolve_jobs(jobs);
  if (jobs > n) jobs = n;
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace evreq
