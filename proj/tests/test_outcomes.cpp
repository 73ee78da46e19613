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
#include <set>
#include <sstream>
#include <tuple>

#include "evreq/mechanisms.hpp"
#include "evreq/outcomes.hpp"
#include "evreq/sampling.hpp"
#include "evreq/search.hpp"

using namespace evreq;

namespace {

Params canonical() { return Params::make(Rat(7, 10), Rat(4, 5), Rat(1, 2), Rat(7, 40), Rat(17, 100)); }

AgentStrategy random_strategy(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  AgentStrategy s;
  s.e1 = bit(rng);
  for (int w = 0; w < 2; ++w) s.d1[w] = bit(rng) ? Disclosure::kReveal : Disclosure::kConceal;
  for (int i = 0; i < 5; ++i) {
    s.e2[i] = bit(rng);
    for (int w = 0; w < 2; ++w) s.d2[i][w] = bit(rng) ? Disclosure::kReveal : Disclosure::kConceal;
  }
  return s;
}

}  // namespace

TEST_CASE("probabilities sum to one and atoms are distinct") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  for (int i = 0; i < 200; ++i) {
    const Params p = sample_params(rng);
    const OutcomeDistribution d = play(p, decode(mech(rng)), random_strategy(rng));
    CHECK(d.total() == Rat(1));
    std::set<std::tuple<bool, int, bool, int>> keys;
    for (const auto& atom : d.atoms) {
      CHECK(atom.prob > Rat(0));
      keys.insert({atom.omega1, static_cast<int>(atom.o1), atom.omega2,
                   static_cast<int>(atom.o2)});
    }
    CHECK(keys.size() == d.atoms.size());
  }
}

TEST_CASE("no free signal, no tests: a single silent path") {
  const Params p = Params::make(Rat(7, 10), Rat(4, 5), Rat(0), Rat(1, 4), Rat(1, 4));
  Mechanism m;  // never test, assign 0 everywhere except...
  m.xhat[index_of(Report::kNull)][index_of(Report::kNull)] = true;
  const OutcomeDistribution d = play(p, m, obedient_strategy(m));
  CHECK(d.atoms.size() == 4);  // only the state path varies
  Rat p_omega2(0);
  for (const auto& atom : d.atoms) {
    CHECK(atom.o1 == Observation::kNone);
    CHECK(atom.o2 == Observation::kNone);
    CHECK(atom.r1 == Report::kNull);
    CHECK(atom.r2 == Report::kNull);
    CHECK(atom.x == m.xhat_at(Report::kNull, Report::kNull));
    if (atom.omega2) p_omega2 += atom.prob;
  }
  CHECK(p_omega2 == Rat(31, 50));
}

TEST_CASE("gaming against the baseline reports high with probability mu0") {
  const Params p = canonical();
  const Mechanism base = baseline_mechanism(p);
  const OutcomeDistribution d = play(p, base, gaming_strategy());
  Rat p_high(0), p_null(0);
  for (const auto& atom : d.atoms) {
    if (atom.r1 == Report::kHigh) p_high += atom.prob;
    if (atom.r1 == Report::kNull) p_null += atom.prob;
  }
  CHECK(p_high == Rat(4, 5));
  CHECK(p_null == Rat(1, 5));
}

TEST_CASE("state marginal is strategy independent") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  for (int i = 0; i < 100; ++i) {
    const Params p = sample_params(rng);
    const OutcomeDistribution d = play(p, decode(mech(rng)), random_strategy(rng));
    Rat p_omega2(0);
    for (const auto& atom : d.atoms)
      if (atom.omega2) p_omega2 += atom.prob;
    CHECK(p_omega2 == belief_after_report(p, Report::kNull));
  }
}

TEST_CASE("best response value matches its play payoff") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  for (int i = 0; i < 150; ++i) {
    const Params p = sample_params(rng);
    const Mechanism m = decode(mech(rng));
    const BestResponse br = best_response(p, m);
    CHECK(agent_payoff(play(p, m, br.strategy), p) == br.values.v0);
  }
}

TEST_CASE("principal payoff examples") {
  const Params p = canonical();
  CHECK(baseline_payoff(p, baseline_mechanism(p)) == Rat(21, 25));

  // result-dependent optimum under best response
  const ClosedFormResult cf = optimal_closed_form(p);
  REQUIRE(cf.mechanism.has_value());
  CHECK(principal_payoff(play(p, *cf.mechanism, best_response(p, *cf.mechanism).strategy), p) ==
        Rat(104, 125));

  Mechanism zero;
  CHECK(principal_payoff(play(p, zero, obedient_strategy(zero)), p) == Rat(19, 50));
}

TEST_CASE("agent payoff examples") {
  const Params p = canonical();
  Mechanism zero;
  AgentStrategy never;
  for (int i = 0; i < 5; ++i) never.e2[i] = false;
  never.e1 = false;
  CHECK(agent_payoff(play(p, zero, never), p) == Rat(0));
}

TEST_CASE("baseline payoff examples") {
  // always test at t=2 with efficient assignments: the assignment is always right
  const Params low = Params::make(Rat(7, 10), Rat(4, 5), Rat(1, 2), Rat(1, 10), Rat(1, 10));
  CHECK(baseline_payoff(low, baseline_mechanism(low)) == Rat(9, 10));

  // never test, follow the second report only
  const Params p = canonical();
  TestingPolicy none;
  AssignmentMap follow{};
  for (Report r1 : kAllReports) follow[index_of(r1)][index_of(Report::kHigh)] = true;
  CHECK(baseline_payoff(p, with_policy(none, follow)) == Rat(69, 100));
}

TEST_CASE("baseline payoff matches the symbolic objective") {
  // Pr[x = omega2] - k*(sigma1 + E[sigma2(r1)]), with the testing-probability
  // term expanded as [s1 + (1-s1)pi][mu0 s2(high) + (1-mu0) s2(low)] +
  // (1-s1)(1-pi) s2(null).
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> mech(0, kMechanismCount - 1);
  for (int i = 0; i < 150; ++i) {
    const Params p = sample_params(rng);
    const Mechanism m = decode(mech(rng));
    const Rat s1(m.sigma1 ? 1 : 0);
    const Rat s2_null(m.sigma2_at(Report::kNull) ? 1 : 0);
    const Rat s2_low(m.sigma2_at(Report::kLow) ? 1 : 0);
    const Rat s2_high(m.sigma2_at(Report::kHigh) ? 1 : 0);
    const Rat expected_tests =
        s1 + (s1 + (Rat(1) - s1) * p.pi) * (p.mu0 * s2_high + (Rat(1) - p.mu0) * s2_low) +
        (Rat(1) - s1) * p.one_minus_pi() * s2_null;
    const OutcomeDistribution d = play(p, m, obedient_strategy(m));
    Rat correct(0), tests(0);
    for (const auto& atom : d.atoms) {
      if (atom.x == atom.omega2) correct += atom.prob;
      tests += atom.prob * Rat((atom.e1 ? 1 : 0) + (atom.e2 ? 1 : 0));
    }
    CHECK(tests == expected_tests);
    CHECK(baseline_payoff(p, m) == correct - p.k * expected_tests);
  }
}

TEST_CASE("csv golden fixture") {
  const Params p = canonical();
  const Mechanism base = baseline_mechanism(p);
  const OutcomeDistribution d = play(p, base, obedient_strategy(base));
  // Probabilities checked by hand: e.g. the last row is
  // mu0 * pi * rho * (1-pi) = (4/5)(1/2)(7/10)(1/2) = 7/50.
  const std::string expected =
      "omega1,o1,r1,e1,omega2,o2,r2,e2,x,prob\n"
      "0,none,null,0,0,saw0,low,1,0,7/100\n"
      "0,none,null,0,1,saw1,high,1,1,3/100\n"
      "0,saw0,low,0,0,none,null,0,0,7/200\n"
      "0,saw0,low,0,0,saw0,low,0,0,7/200\n"
      "0,saw0,low,0,1,none,null,0,0,3/200\n"
      "0,saw0,low,0,1,saw1,high,0,1,3/200\n"
      "1,none,null,0,0,saw0,low,1,0,3/25\n"
      "1,none,null,0,1,saw1,high,1,1,7/25\n"
      "1,saw1,high,0,0,none,null,0,1,3/50\n"
      "1,saw1,high,0,0,saw0,low,0,0,3/50\n"
      "1,saw1,high,0,1,none,null,0,1,7/50\n"
      "1,saw1,high,0,1,saw1,high,0,1,7/50\n";
  CHECK(to_csv(d) == expected);
  CHECK(to_csv(d) == to_csv(play(p, base, obedient_strategy(base))));  // deterministic
}

TEST_CASE("outcome marginal separates different assignments") {
  const Params p = canonical();
  Mechanism a;  // all zero
  Mechanism b = a;
  for (Report r1 : kAllReports)
    for (Report r2 : kAllReports) b.xhat[index_of(r1)][index_of(r2)] = true;
  const AgentStrategy s = obedient_strategy(a);
  CHECK_FALSE(same_outcomes(play(p, a, s), play(p, b, s)));
  CHECK(same_outcomes(play(p, a, s), play(p, a, s)));
}
