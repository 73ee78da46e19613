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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evreq/agent.hpp"
#include "evreq/core.hpp"

namespace evreq {

using AssignmentMap = std::array<std::array<bool, 3>, 3>;  // [r1][r2]

// Statically optimal assignment at every report pair: follow a disclosed
// second result; otherwise assign 1 exactly when the report-based belief is
// at least 1/2. Defined at all nine cells, including pairs that never occur
// on path.
AssignmentMap efficient_assignments(const Params& p);

Mechanism with_policy(const TestingPolicy& policy, const AssignmentMap& xhat);

// The mechanism the principal would pick if the agent simply obeyed: never
// test in the first period, pair efficient assignments with a second-period
// testing rule driven by the effective cost kappa (always test when cheap,
// test only after a missing report at intermediate cost, never test when
// expensive). The result is returned in forcing form.
Mechanism baseline_mechanism(const Params& p);

// Overwrite xhat(r1, Null) with 0 wherever sigma2(r1) = 1. Idempotent.
Mechanism make_forcing(Mechanism m);

// Result-dependent testing policy: request a second test unless the first
// report disclosed a low state. Tests more than the intermediate baseline
// exactly at a favorable first report.
TestingPolicy result_dependent_policy();

struct Constraint {
  std::string name;
  bool satisfied;
  Rat slack;  // >= 0 iff satisfied, measured in the constraint's stated direction
};

struct ConstraintReport {
  std::vector<Constraint> constraints;

  bool all_satisfied() const;
  const Constraint* find(const std::string& name) const;
};

class NonForcingError : public std::invalid_argument {
 public:
  explicit NonForcingError(const std::string& what) : std::invalid_argument(what) {}
};

// Incentive-compatibility check for forcing mechanisms: obedience to both
// testing recommendations and full disclosure in both periods, reported as
// named constraints with exact slacks.
//
// Second-period constraints use the public-report beliefs:
//   [OB,sigma2(r1)=1]  gamma <= E_mu2[xhat(r1, r2~)]
//   [OB,sigma2(r1)=0]  gamma >= E_mu2[xhat(r1, r2~)] - xhat(r1, Null)
//   [FD,r1,omega2]     xhat(r1, omega2) >= xhat(r1, Null)   (only where
//                      sigma2(r1)=0; after a requested test, forcing makes
//                      disclosure free)
// First-period constraints compare best-response continuation values, so a
// deviation that plans further disobedience is priced correctly:
//   [FD,omega1]        v2(observed, reveal) >= v2(observed, conceal)
//   [OB,sigma1]        both directions, in gamma units.
// A constraint appears in the report only when its information set is
// reachable under obedient play (reports unreachable under sigma1, and
// free-signal disclosure cells when pi = 0, are exempt).
//
// Throws NonForcingError on non-forcing input.
ConstraintReport ic_check(const Params& p, const Mechanism& m);

// Convenience: forcing and every applicable constraint satisfied.
bool is_ic(const Params& p, const Mechanism& m);

// Relabeling construction: given any mechanism, build an incentive
// compatible one that reproduces the original best-response play outcome
// for outcome. Reports are relabeled to the agent's true observations,
// recommendations follow what the agent actually did, assignments follow
// what the agent would have reported, and detected deviations are punished
// with assignment 0.
Mechanism revelation_transform(const Params& p, const Mechanism& m);

// Closed-form optimal mechanism for the point's region, when one is known.
// tie_mechanism is populated on the intermediate boundary where two distinct
// mechanisms are exactly optimal.
struct ClosedFormResult {
  RegionLabel region;
  std::optional<Mechanism> mechanism;
  std::optional<Rat> predicted_w;
  std::optional<Mechanism> tie_mechanism;
};

ClosedFormResult optimal_closed_form(const Params& p);

struct SensitivityBound {
  std::string name;
  bool satisfied;
  Rat slack;
};

struct SensitivityBoundsReport {
  std::vector<SensitivityBound> bounds;
  bool all_satisfied() const;
};

// Bounds that every IC mechanism obeys on how much assignments and
// continuation values may vary with reports:
//  - at each reachable no-test report, the belief-weighted assignment gain
//    from a second report lies in [0, gamma]; with c = 0 the three
//    assignments at such a report must coincide;
//  - with sigma1 = 0, the first-report continuation-value gain lies in
//    [0, gamma].
// The lower bounds and the flatness requirement stem from disclosure
// incentives and apply only when free evidence can arrive (pi > 0); the
// upper bounds stem from testing obedience and apply regardless.
// Rejects non-IC input with std::invalid_argument.
SensitivityBoundsReport ic_sensitivity_bounds(const Params& p, const Mechanism& m);

}  // namespace evreq
