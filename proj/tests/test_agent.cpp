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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "evreq/agent.hpp"
#include "evreq/mechanisms.hpp"
#include "evreq/outcomes.hpp"
#include "evreq/sampling.hpp"
#include "evreq/search.hpp"

using namespace evreq;

namespace {

Params canonical() { return Params::make(Rat(7, 10), Rat(4, 5), Rat(1, 2), Rat(7, 40), Rat(17, 100)); }

}  // namespace

TEST_CASE("private states") {
  CHECK(is_valid_state(Observation::kNone, Report::kNull));
  CHECK(is_valid_state(Observation::kSaw0, Report::kLow));
  CHECK_FALSE(is_valid_state(Observation::kNone, Report::kLow));
  CHECK_FALSE(is_valid_state(Observation::kSaw0, Report::kHigh));
  CHECK_FALSE(is_valid_state(Observation::kSaw1, Report::kLow));
  CHECK(state_index(Observation::kNone, Report::kNull) == 0);
  CHECK(state_index(Observation::kSaw1, Report::kHigh) == 4);
  CHECK_THROWS_AS(state_index(Observation::kNone, Report::kHigh), std::invalid_argument);
}

TEST_CASE("private beliefs") {
  const Params p = canonical();
  CHECK(private_belief(p, {Observation::kSaw1, Report::kNull}) == Rat(7, 10));
  CHECK(private_belief(p, {Observation::kSaw0, Report::kLow}) == Rat(3, 10));
  CHECK(private_belief(p, {Observation::kNone, Report::kNull}) == Rat(31, 50));
}

TEST_CASE("continuation value formula") {
  const Params p = canonical();
  Mechanism m;
  m.sigma2[index_of(Report::kNull)] = true;
  m.xhat[index_of(Report::kNull)][index_of(Report::kHigh)] = true;
  CHECK(continuation_value(p, m, Report::kNull, Rat(31, 50)) == Rat(89, 200));

  Mechanism zero;
  CHECK(continuation_value(p, zero, Report::kLow, Rat(3, 10)) == Rat(0));

  Mechanism ones;
  for (Report r1 : kAllReports)
    for (Report r2 : kAllReports) ones.xhat[index_of(r1)][index_of(r2)] = true;
  CHECK(continuation_value(p, ones, Report::kLow, Rat(3, 10)) == Rat(1));
  CHECK_THROWS_AS(continuation_value(p, ones, Report::kLow, Rat(3, 2)), std::invalid_argument);
}

TEST_CASE("obedient strategy shape") {
  const Mechanism base = baseline_mechanism(canonical());  // test iff null report
  const AgentStrategy s = obedient_strategy(base);
  CHECK_FALSE(s.e1);
  CHECK(s.e2[state_index(Observation::kNone, Report::kNull)]);
  CHECK(s.e2[state_index(Observation::kSaw0, Report::kNull)]);
  CHECK_FALSE(s.e2[state_index(Observation::kSaw0, Report::kLow)]);
  CHECK_FALSE(s.e2[state_index(Observation::kSaw1, Report::kHigh)]);
  for (int i = 0; i < 5; ++i)
    for (int w = 0; w < 2; ++w) CHECK(s.d2[i][w] == Disclosure::kReveal);

  Mechanism all_tests;
  all_tests.sigma1 = true;
  all_tests.sigma2 = {true, true, true};
  const AgentStrategy t = obedient_strategy(all_tests);
  CHECK(t.e1);
  for (int i = 0; i < 5; ++i) CHECK(t.e2[i]);
}

TEST_CASE("gaming strategies have the stated fields") {
  const AgentStrategy g = gaming_strategy();
  CHECK(g.e1);
  CHECK(g.d1[1] == Disclosure::kReveal);
  CHECK(g.d1[0] == Disclosure::kConceal);
  for (int i = 0; i < 5; ++i) {
    CHECK_FALSE(g.e2[i]);
    CHECK(g.d2[i][1] == Disclosure::kReveal);
    CHECK(g.d2[i][0] == Disclosure::kConceal);
  }
  const AgentStrategy r = gaming_retest_strategy();
  const int retest = state_index(Observation::kSaw0, Report::kNull);
  CHECK(r.e1);
  CHECK(r.e2[retest]);
  CHECK(r.d2[retest][0] == Disclosure::kReveal);
  CHECK(r.d2[retest][1] == Disclosure::kReveal);
  for (int i = 0; i < 5; ++i) {
    if (i == retest) continue;
    CHECK_FALSE(r.e2[i]);
  }
}

TEST_CASE("gaming payoffs under the forcing baseline") {
  const Params p = canonical();
  const Mechanism base = baseline_mechanism(p);
  CHECK(agent_payoff(play(p, base, gaming_strategy()), p) == Rat(131, 200));
  CHECK(agent_payoff(play(p, base, compliant_wait_strategy()), p) == Rat(51, 80));

  const BestResponse br = best_response(p, base);
  CHECK(br.values.v0 == Rat(131, 200));
  CHECK(br.values.e1_test == Rat(131, 200));
  CHECK(br.values.e1_wait == Rat(51, 80));
  CHECK(br.strategy.e1);
  // Value-equivalent to the gaming deviation, and outcome-equivalent: the
  // only difference is a tied first-period disclosure of a low draw.
  CHECK(same_outcomes(play(p, base, br.strategy), play(p, base, gaming_strategy())));
  CHECK(br.strategy.d1[0] == Disclosure::kReveal);  // the tie resolves to disclosure
}

TEST_CASE("retest gaming payoffs at low agent cost") {
  const Params p = Params::make(Rat(7, 10), Rat(4, 5), Rat(1, 2), Rat(1, 10), Rat(17, 100));
  const Mechanism base = baseline_mechanism(p);
  CHECK(agent_payoff(play(p, base, gaming_retest_strategy()), p) == Rat(37, 50));
  CHECK(agent_payoff(play(p, base, compliant_wait_retest_strategy()), p) == Rat(17, 25));
  const BestResponse br = best_response(p, base);
  CHECK(br.values.e1_test == Rat(37, 50));
  CHECK(br.values.e1_wait == Rat(17, 25));
}

TEST_CASE("constant mechanism: never test, reveal everything") {
  const Params p = canonical();
  Mechanism m;
  for (Report r1 : kAllReports)
    for (Report r2 : kAllReports) m.xhat[index_of(r1)][index_of(r2)] = true;
  const BestResponse br = best_response(p, m);
  CHECK_FALSE(br.strategy.e1);
  for (int i = 0; i < 5; ++i) {
    CHECK_FALSE(br.strategy.e2[i]);
    for (int w = 0; w < 2; ++w) CHECK(br.strategy.d2[i][w] == Disclosure::kReveal);
  }
  CHECK(br.strategy.d1[0] == Disclosure::kReveal);
  CHECK(br.strategy.d1[1] == Disclosure::kReveal);
  CHECK(br.values.v0 == Rat(1));
}

TEST_CASE("result-dependent policy with efficient assignments is obeyed") {
  const Params p = canonical();
  const Mechanism m = make_forcing(with_policy(result_dependent_policy(), efficient_assignments(p)));
  const OutcomeDistribution br_play = play(p, m, best_response(p, m).strategy);
  const OutcomeDistribution ob_play = play(p, m, obedient_strategy(m));
  CHECK(same_play(br_play, ob_play));
}

TEST_CASE("best response is deterministic") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  for (int i = 0; i < 50; ++i) {
    const Params p = sample_params(rng);
    const Mechanism m = decode(mech(rng));
    const BestResponse a = best_response(p, m);
    const BestResponse b = best_response(p, m);
    CHECK(a.strategy == b.strategy);
    CHECK(a.values.v0 == b.values.v0);
  }
}

TEST_CASE("value table bounds") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  for (int i = 0; i < 100; ++i) {
    const Params p = sample_params(rng);
    const BestResponse br = best_response(p, decode(mech(rng)));
    for (const Rat& v : br.values.v2) {
      CHECK(v >= Rat(0) - p.c);
      CHECK(v <= Rat(1));
    }
    CHECK(br.values.v0 >= Rat(0) - Rat(2) * p.c);
    CHECK(br.values.v0 <= Rat(1));
  }
}

TEST_CASE("no strict concealment after a requested test under forcing") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  int checked = 0;
  while (checked < 200) {
    const Params p = sample_params(rng);
    const Mechanism m = make_forcing(decode(mech(rng)));
    const BestResponse br = best_response(p, m);
    for (int i = 0; i < 5; ++i) {
      if (!m.sigma2_at(kPrivateStates[i].r1)) continue;
      for (int w = 0; w < 2; ++w) CHECK(br.strategy.d2[i][w] == Disclosure::kReveal);
    }
    ++checked;
  }
}

TEST_CASE("best response beats random strategies") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const Params p = sample_params(rng);
    const Mechanism m = decode(mech(rng));
    const BestResponse br = best_response(p, m);
    CHECK(agent_payoff(play(p, m, br.strategy), p) == br.values.v0);
    for (int s = 0; s < 60; ++s) {
      AgentStrategy rival;
      rival.e1 = bit(rng);
      for (int w = 0; w < 2; ++w)
        rival.d1[w] = bit(rng) ? Disclosure::kReveal : Disclosure::kConceal;
      for (int i = 0; i < 5; ++i) {
        rival.e2[i] = bit(rng);
        for (int w = 0; w < 2; ++w)
          rival.d2[i][w] = bit(rng) ? Disclosure::kReveal : Disclosure::kConceal;
      }
      CHECK(agent_payoff(play(p, m, rival), p) <= br.values.v0);
    }
  }
}
