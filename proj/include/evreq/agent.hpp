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
#include <cstdint>

#include "evreq/core.hpp"
#include "evreq/rat.hpp"

namespace evreq {

// What the agent saw in a period: nothing, or the realized state.
enum class Observation : std::uint8_t { kNone = 0, kSaw0 = 1, kSaw1 = 2 };

const char* to_string(Observation o);

enum class Disclosure : std::uint8_t { kConceal = 0, kReveal = 1 };

// The agent's private position at the start of the second period: what he
// observed in the first period and what he publicly reported. Reports are
// verifiable, which leaves exactly five consistent states.
struct PrivateState {
  Observation o1;
  Report r1;

  friend bool operator==(const PrivateState&, const PrivateState&) = default;
};

// Canonical state order; indices into AgentStrategy/ValueTable arrays.
constexpr std::array<PrivateState, 5> kPrivateStates = {{
    {Observation::kNone, Report::kNull},
    {Observation::kSaw0, Report::kNull},
    {Observation::kSaw0, Report::kLow},
    {Observation::kSaw1, Report::kNull},
    {Observation::kSaw1, Report::kHigh},
}};

bool is_valid_state(Observation o1, Report r1);
int state_index(Observation o1, Report r1);  // throws on invalid pairs

// Complete contingent plan: first-period test and disclosure, second-period
// test and disclosure per private state. Disclosure maps are indexed by the
// observed state value (0/1) and do not condition on whether the
// observation came from a test or a free signal; the continuation problem
// is identical either way.
struct AgentStrategy {
  bool e1 = false;
  std::array<Disclosure, 2> d1 = {Disclosure::kReveal, Disclosure::kReveal};  // [omega1]
  std::array<bool, 5> e2 = {false, false, false, false, false};               // by state index
  std::array<std::array<Disclosure, 2>, 5> d2 = {{
      {Disclosure::kReveal, Disclosure::kReveal},
      {Disclosure::kReveal, Disclosure::kReveal},
      {Disclosure::kReveal, Disclosure::kReveal},
      {Disclosure::kReveal, Disclosure::kReveal},
      {Disclosure::kReveal, Disclosure::kReveal},
  }};  // [state][omega2]

  friend bool operator==(const AgentStrategy&, const AgentStrategy&) = default;
};

// Exact continuation values produced by the backward induction. e1_test /
// e1_wait are the two first-period branch values (test now vs. follow the
// free-signal lottery); v0 is their maximum under the tie rule.
struct ValueTable {
  std::array<Rat, 5> v2;
  Rat v0;
  Rat e1_test;
  Rat e1_wait;
};

struct BestResponse {
  AgentStrategy strategy;
  ValueTable values;
};

// Agent's private second-period belief that omega2 = 1:
// Saw1 -> rho, Saw0 -> 1-rho, no observation -> the Null-report belief.
Rat private_belief(const Params& p, const PrivateState& s);

// Expected second-period payoff of holding report r1 with belief mu2, under
// obedient testing and full disclosure:
//   -c*s2 + [s2 + (1-s2)*pi] * [mu2*xhat(r1,H) + (1-mu2)*xhat(r1,L)]
//         + (1-s2)*(1-pi)*xhat(r1,Null),   where s2 = sigma2(r1).
Rat continuation_value(const Params& p, const Mechanism& m, Report r1, const Rat& mu2);

// Exact best response by backward induction. Ties are resolved by the
// model's rule: an indifferent agent follows the test recommendation and
// discloses. The returned strategy is the unique maximizer under that rule.
BestResponse best_response(const Params& p, const Mechanism& m);

// Follow every recommendation and disclose everything.
AgentStrategy obedient_strategy(const Mechanism& m);

// Test in the first period, disclose only a favorable result, never test
// again, and disclose only favorable free evidence afterwards.
AgentStrategy gaming_strategy();

// Like gaming_strategy, but after concealing an unfavorable first result the
// agent tests again in the second period and discloses that test result.
AgentStrategy gaming_retest_strategy();

}  // namespace evreq
