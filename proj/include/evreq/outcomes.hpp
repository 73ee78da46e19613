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

#include <array>
#include <string>
#include <vector>

#include "evreq/agent.hpp"
#include "evreq/core.hpp"

namespace evreq {

// One terminal path of play with its exact probability. Zero-probability
// branches are never materialized.
struct OutcomeAtom {
  bool omega1;
  Observation o1;
  Report r1;
  bool e1;
  bool omega2;
  Observation o2;
  Report r2;
  bool e2;
  bool x;
  Rat prob;
};

struct OutcomeDistribution {
  std::vector<OutcomeAtom> atoms;  // canonical order, pairwise distinct coordinates

  Rat total() const;
};

// Exact joint distribution over play paths induced by (params, mechanism,
// strategy): omega1 ~ Bernoulli(mu0), omega2 given omega1 via persistence
// rho, per-period observation certain under a test and Bernoulli(pi)
// otherwise, reports per the strategy, x = xhat(r1, r2).
OutcomeDistribution play(const Params& p, const Mechanism& m, const AgentStrategy& s);

// Sum of prob * (1[x = omega2] - k * (e1 + e2)).
Rat principal_payoff(const OutcomeDistribution& dist, const Params& p);

// Sum of prob * (x - c * (e1 + e2)).
Rat agent_payoff(const OutcomeDistribution& dist, const Params& p);

// Principal's payoff when agent incentives are ignored: obedient, fully
// disclosing play of the mechanism.
Rat baseline_payoff(const Params& p, const Mechanism& m);

// Marginal distribution over (x, e1, e2, omega2); cell index is
// x + 2*e1 + 4*e2 + 8*omega2. Two plays are outcome-equivalent when these
// marginals agree cell by cell.
std::array<Rat, 16> outcome_marginal(const OutcomeDistribution& dist);
bool same_outcomes(const OutcomeDistribution& a, const OutcomeDistribution& b);

// CSV with one atom per row; columns:
// omega1,o1,r1,e1,omega2,o2,r2,e2,x,prob
std::string to_csv(const OutcomeDistribution& dist);

}  // namespace evreq
