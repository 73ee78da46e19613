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

#include "evreq/outcomes.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace evreq {

namespace {

auto atom_key(const OutcomeAtom& a) {
  return std::make_tuple(a.omega1, static_cast<int>(a.o1), a.omega2, static_cast<int>(a.o2));
}

struct Branch {
  Observation obs;
  Rat prob;
};

// Observation lottery for one period: a test reveals the state surely, and
// otherwise a free signal arrives with probability pi.
void observation_branches(const Params& p, bool omega, bool tested, std::vector<Branch>& out) {
  out.clear();
  const Observation saw = omega ? Observation::kSaw1 : Observation::kSaw0;
  if (tested) {
    out.push_back({saw, Rat(1)});
    return;
  }
  if (!p.pi.is_zero()) out.push_back({saw, p.pi});
  if (p.pi < Rat(1)) out.push_back({Observation::kNone, p.one_minus_pi()});
}

}  // namespace

Rat OutcomeDistribution::total() const {
  Rat t(0);
  for (const auto& a : atoms) t += a.prob;
  return t;
}

OutcomeDistribution play(const Params& p, const Mechanism& m, const AgentStrategy& s) {
  p.validate();
  OutcomeDistribution dist;
  dist.atoms.reserve(16);
  std::vector<Branch> first, second;
  first.reserve(2);
  second.reserve(2);

  for (int w1 = 0; w1 < 2; ++w1) {
    const Rat p_w1 = w1 == 1 ? p.mu0 : Rat(1) - p.mu0;
    if (p_w1.is_zero()) continue;
    observation_branches(p, w1 == 1, s.e1, first);
    for (const Branch& b1 : first) {
      Report r1 = Report::kNull;
      if (b1.obs != Observation::kNone && s.d1[w1] == Disclosure::kReveal)
        r1 = report_of_state(w1 == 1);
      const int st = state_index(b1.obs, r1);
      const bool e2 = s.e2[st];
      for (int w2 = 0; w2 < 2; ++w2) {
        const Rat p_w2 = w2 == w1 ? p.rho : p.one_minus_rho();
        if (p_w2.is_zero()) continue;
        observation_branches(p, w2 == 1, e2, second);
        for (const Branch& b2 : second) {
          Report r2 = Report::kNull;
          if (b2.obs != Observation::kNone && s.d2[st][w2] == Disclosure::kReveal)
            r2 = report_of_state(w2 == 1);
          OutcomeAtom atom;
          atom.omega1 = w1 == 1;
          atom.o1 = b1.obs;
          atom.r1 = r1;
          atom.e1 = s.e1;
          atom.omega2 = w2 == 1;
          atom.o2 = b2.obs;
          atom.r2 = r2;
          atom.e2 = e2;
          atom.x = m.xhat_at(r1, r2);
          atom.prob = p_w1 * b1.prob * p_w2 * b2.prob;
          dist.atoms.push_back(atom);
        }
      }
    }
  }
  std::sort(dist.atoms.begin(), dist.atoms.end(),
            [](const OutcomeAtom& a, const OutcomeAtom& b) { return atom_key(a) < atom_key(b); });
  return dist;
}

Rat principal_payoff(const OutcomeDistribution& dist, const Params& p) {
  Rat total(0);
  for (const auto& a : dist.atoms) {
    const Rat correct = a.x == a.omega2 ? Rat(1) : Rat(0);
    const Rat tests((a.e1 ? 1 : 0) + (a.e2 ? 1 : 0));
    total += a.prob * (correct - p.k * tests);
  }
  return total;
}

Rat agent_payoff(const OutcomeDistribution& dist, const Params& p) {
  Rat total(0);
  for (const auto& a : dist.atoms) {
    const Rat tests((a.e1 ? 1 : 0) + (a.e2 ? 1 : 0));
    total += a.prob * (Rat(a.x ? 1 : 0) - p.c * tests);
  }
  return total;
}

Rat baseline_payoff(const Params& p, const Mechanism& m) {
  return principal_payoff(play(p, m, obedient_strategy(m)), p);
}

std::array<Rat, 16> outcome_marginal(const OutcomeDistribution& dist) {
  std::array<Rat, 16> cells{};
  for (const auto& a : dist.atoms) {
    const int idx = (a.x ? 1 : 0) + 2 * (a.e1 ? 1 : 0) + 4 * (a.e2 ? 1 : 0) + 8 * (a.omega2 ? 1 : 0);
    cells[idx] += a.prob;
  }
  return cells;
}

bool same_outcomes(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  return outcome_marginal(a) == outcome_marginal(b);
}

std::string to_csv(const OutcomeDistribution& dist) {
  std::ostringstream out;
  out << "omega1,o1,r1,e1,omega2,o2,r2,e2,x,prob\n";
  for (const auto& a : dist.atoms) {
    out << (a.omega1 ? 1 : 0) << ',' << to_string(a.o1) << ',' << to_string(a.r1) << ','
        << (a.e1 ? 1 : 0) << ',' << (a.omega2 ? 1 : 0) << ',' << to_string(a.o2) << ','
        << to_string(a.r2) << ',' << (a.e2 ? 1 : 0) << ',' << (a.x ? 1 : 0) << ','
        << a.prob.str() << '\n';
  }
  return out.str();
}

}  // namespace evreq
