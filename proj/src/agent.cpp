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

#include "evreq/agent.hpp"

#include <stdexcept>

namespace evreq {

const char* to_string(Observation o) {
  switch (o) {
    case Observation::kNone: return "none";
    case Observation::kSaw0: return "saw0";
    case Observation::kSaw1: return "saw1";
  }
  return "?";
}

bool is_valid_state(Observation o1, Report r1) {
  switch (r1) {
    case Report::kNull: return true;
    case Report::kLow: return o1 == Observation::kSaw0;
    case Report::kHigh: return o1 == Observation::kSaw1;
  }
  return false;
}

int state_index(Observation o1, Report r1) {
  for (int i = 0; i < 5; ++i) {
    if (kPrivateStates[i].o1 == o1 && kPrivateStates[i].r1 == r1) return i;
  }
  throw std::invalid_argument("inconsistent private state");
}

Rat private_belief(const Params& p, const PrivateState& s) {
  if (!is_valid_state(s.o1, s.r1)) throw std::invalid_argument("inconsistent private state");
  switch (s.o1) {
    case Observation::kSaw1: return p.rho;
    case Observation::kSaw0: return p.one_minus_rho();
    case Observation::kNone: return belief_after_report(p, Report::kNull);
  }
  throw std::logic_error("bad observation");
}

Rat continuation_value(const Params& p, const Mechanism& m, Report r1, const Rat& mu2) {
  if (mu2 < Rat(0) || mu2 > Rat(1)) throw std::invalid_argument("mu2 outside [0, 1]");
  const Rat s2 = m.sigma2_at(r1) ? Rat(1) : Rat(0);
  const Rat x_high = m.xhat_at(r1, Report::kHigh) ? Rat(1) : Rat(0);
  const Rat x_low = m.xhat_at(r1, Report::kLow) ? Rat(1) : Rat(0);
  const Rat x_null = m.xhat_at(r1, Report::kNull) ? Rat(1) : Rat(0);
  const Rat observed = mu2 * x_high + (Rat(1) - mu2) * x_low;
  return Rat(0) - p.c * s2 + (s2 + (Rat(1) - s2) * p.pi) * observed +
         (Rat(1) - s2) * p.one_minus_pi() * x_null;
}

namespace {

// Value of the disclosure-optimized assignment when omega2 = w has been
// observed at report r1. Reveal on ties.
struct StateSolution {
  std::array<Disclosure, 2> d2;
  Rat expected_observed;  // E over omega2 of the optimized assignment
};

StateSolution solve_disclosure(const Mechanism& m, Report r1, const Rat& mu2) {
  StateSolution s;
  const int x_null = m.xhat_at(r1, Report::kNull) ? 1 : 0;
  Rat e(0);
  for (int w = 0; w < 2; ++w) {
    const int x_w = m.xhat_at(r1, report_of_state(w)) ? 1 : 0;
    s.d2[w] = x_w >= x_null ? Disclosure::kReveal : Disclosure::kConceal;
    const Rat weight = w == 1 ? mu2 : Rat(1) - mu2;
    e += weight * Rat(x_w > x_null ? x_w : x_null);
  }
  s.expected_observed = e;
  return s;
}

}  // namespace

BestResponse best_response(const Params& p, const Mechanism& m) {
  p.validate();
  BestResponse br;
  AgentStrategy& strat = br.strategy;
  ValueTable& val = br.values;

  // Second period, one decision problem per private state.
  for (int i = 0; i < 5; ++i) {
    const PrivateState& st = kPrivateStates[i];
    const Rat mu2 = private_belief(p, st);
    const StateSolution sol = solve_disclosure(m, st.r1, mu2);
    strat.d2[i] = sol.d2;
    const Rat x_null = m.xhat_at(st.r1, Report::kNull) ? Rat(1) : Rat(0);
    const Rat test_value = sol.expected_observed - p.c;
    const Rat wait_value = p.pi * sol.expected_observed + p.one_minus_pi() * x_null;
    if (test_value > wait_value) {
      strat.e2[i] = true;
    } else if (test_value < wait_value) {
      strat.e2[i] = false;
    } else {
      strat.e2[i] = m.sigma2_at(st.r1);
    }
    val.v2[i] = max(test_value, wait_value);
  }

  // First-period disclosure: compare the continuation of reporting the
  // observed state against concealing it. Reveal on ties.
  std::array<Rat, 2> after_obs;
  for (int w = 0; w < 2; ++w) {
    const Observation obs = w == 1 ? Observation::kSaw1 : Observation::kSaw0;
    const Rat reveal = val.v2[state_index(obs, report_of_state(w))];
    const Rat conceal = val.v2[state_index(obs, Report::kNull)];
    strat.d1[w] = reveal >= conceal ? Disclosure::kReveal : Disclosure::kConceal;
    after_obs[w] = max(reveal, conceal);
  }

  // First-period testing.
  const Rat observed_mean = p.mu0 * after_obs[1] + (Rat(1) - p.mu0) * after_obs[0];
  const Rat v_nosignal = val.v2[state_index(Observation::kNone, Report::kNull)];
  val.e1_test = observed_mean - p.c;
  val.e1_wait = p.pi * observed_mean + p.one_minus_pi() * v_nosignal;
  if (val.e1_test > val.e1_wait) {
    strat.e1 = true;
  } else if (val.e1_test < val.e1_wait) {
    strat.e1 = false;
  } else {
    strat.e1 = m.sigma1;
  }
  val.v0 = max(val.e1_test, val.e1_wait);
  return br;
}

AgentStrategy obedient_strategy(const Mechanism& m) {
  AgentStrategy s;
  s.e1 = m.sigma1;
  for (int i = 0; i < 5; ++i) s.e2[i] = m.sigma2_at(kPrivateStates[i].r1);
  return s;  // all disclosures default to Reveal
}

AgentStrategy gaming_strategy() {
  AgentStrategy s;
  s.e1 = true;
  s.d1 = {Disclosure::kConceal, Disclosure::kReveal};
  for (int i = 0; i < 5; ++i) {
    s.e2[i] = false;
    s.d2[i] = {Disclosure::kConceal, Disclosure::kReveal};
  }
  return s;
}

AgentStrategy gaming_retest_strategy() {
  AgentStrategy s = gaming_strategy();
  const int retest_state = state_index(Observation::kSaw0, Report::kNull);
  s.e2[retest_state] = true;
  s.d2[retest_state] = {Disclosure::kReveal, Disclosure::kReveal};
  return s;
}

}  // namespace evreq
