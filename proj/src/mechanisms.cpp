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

#include "evreq/mechanisms.hpp"

#include <algorithm>

#include "evreq/outcomes.hpp"

namespace evreq {

AssignmentMap efficient_assignments(const Params& p) {
  p.validate();
  const Rat half(1, 2);
  AssignmentMap x{};
  for (Report r1 : kAllReports) {
    x[index_of(r1)][index_of(Report::kHigh)] = true;
    x[index_of(r1)][index_of(Report::kLow)] = false;
    x[index_of(r1)][index_of(Report::kNull)] = belief_after_report(p, r1) >= half;
  }
  return x;
}

Mechanism with_policy(const TestingPolicy& policy, const AssignmentMap& xhat) {
  Mechanism m;
  m.sigma1 = policy.sigma1;
  m.sigma2 = policy.sigma2;
  m.xhat = xhat;
  return m;
}

Mechanism baseline_mechanism(const Params& p) {
  const Thresholds t = thresholds(p);
  const Rat min_belief = min(t.mu2_null, Rat(1) - t.mu2_null);
  TestingPolicy policy;
  policy.sigma1 = false;
  if (t.kappa <= t.one_minus_rho) {
    policy.sigma2 = {true, true, true};
  } else if (t.kappa <= min_belief) {
    policy.sigma2 = {true, false, false};  // test only after a missing report
  } else {
    policy.sigma2 = {false, false, false};
  }
  return make_forcing(with_policy(policy, efficient_assignments(p)));
}

Mechanism make_forcing(Mechanism m) {
  for (Report r1 : kAllReports) {
    if (m.sigma2_at(r1)) m.xhat[index_of(r1)][index_of(Report::kNull)] = false;
  }
  return m;
}

TestingPolicy result_dependent_policy() {
  TestingPolicy policy;
  policy.sigma1 = false;
  policy.sigma2[index_of(Report::kNull)] = true;
  policy.sigma2[index_of(Report::kLow)] = false;
  policy.sigma2[index_of(Report::kHigh)] = true;
  return policy;
}

bool ConstraintReport::all_satisfied() const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [](const Constraint& c) { return c.satisfied; });
}

const Constraint* ConstraintReport::find(const std::string& name) const {
  for (const auto& c : constraints) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

void push_constraint(ConstraintReport& report, std::string name, Rat slack) {
  report.constraints.push_back({std::move(name), slack >= Rat(0), slack});
}

// A first report is reachable under obedient play when it can actually be
// sent: Null requires sigma1 = 0, a disclosed state requires an observation
// (a first-period test or a free signal).
bool report_reachable(const Params& p, const Mechanism& m, Report r1) {
  if (r1 == Report::kNull) return !m.sigma1;
  return m.sigma1 || !p.pi.is_zero();
}

}  // namespace

ConstraintReport ic_check(const Params& p, const Mechanism& m) {
  p.validate();
  if (!m.is_forcing())
    throw NonForcingError("ic_check requires a forcing mechanism (index " +
                          std::to_string(encode(m)) + ")");
  const Rat gamma = p.c / p.one_minus_pi();
  const BestResponse br = best_response(p, m);
  ConstraintReport report;

  // First-period obedience, in gamma units.
  Rat observed_mean(0);
  for (int w = 0; w < 2; ++w) {
    const Observation obs = w == 1 ? Observation::kSaw1 : Observation::kSaw0;
    const Rat reveal = br.values.v2[state_index(obs, report_of_state(w == 1))];
    const Rat conceal = br.values.v2[state_index(obs, Report::kNull)];
    const Rat weight = w == 1 ? p.mu0 : Rat(1) - p.mu0;
    observed_mean += weight * max(reveal, conceal);
  }
  const Rat testing_gain =
      observed_mean - br.values.v2[state_index(Observation::kNone, Report::kNull)];
  if (!m.sigma1) {
    push_constraint(report, "OB_sigma1=0", gamma - testing_gain);
  } else {
    push_constraint(report, "OB_sigma1=1", testing_gain - gamma);
  }

  // First-period disclosure, priced at best-response continuation values.
  if (m.sigma1 || !p.pi.is_zero()) {
    for (int w = 0; w < 2; ++w) {
      const Observation obs = w == 1 ? Observation::kSaw1 : Observation::kSaw0;
      const Rat reveal = br.values.v2[state_index(obs, report_of_state(w == 1))];
      const Rat conceal = br.values.v2[state_index(obs, Report::kNull)];
      push_constraint(report, std::string("FD_omega1=") + (w == 1 ? "1" : "0"),
                      reveal - conceal);
    }
  }

  // Second-period obedience and disclosure at each reachable report.
  for (Report r1 : kAllReports) {
    if (!report_reachable(p, m, r1)) continue;
    const Rat mu2 = belief_after_report(p, r1);
    const Rat expected = mu2 * Rat(m.xhat_at(r1, Report::kHigh) ? 1 : 0) +
                         (Rat(1) - mu2) * Rat(m.xhat_at(r1, Report::kLow) ? 1 : 0);
    const Rat x_null(m.xhat_at(r1, Report::kNull) ? 1 : 0);
    const std::string rname = to_string(r1);
    if (m.sigma2_at(r1)) {
      push_constraint(report, "OB_sigma2(" + rname + ")=1", expected - gamma);
    } else {
      push_constraint(report, "OB_sigma2(" + rname + ")=0", gamma - (expected - x_null));
      if (!p.pi.is_zero()) {
        for (int w = 0; w < 2; ++w) {
          const Rat x_w(m.xhat_at(r1, report_of_state(w == 1)) ? 1 : 0);
          push_constraint(report,
                          "FD(" + rname + ",omega2=" + (w == 1 ? "1" : "0") + ")",
                          x_w - x_null);
        }
      }
    }
  }
  return report;
}

bool is_ic(const Params& p, const Mechanism& m) {
  if (!m.is_forcing()) return false;
  return ic_check(p, m).all_satisfied();
}

Mechanism revelation_transform(const Params& p, const Mechanism& m) {
  const AgentStrategy s = best_response(p, m).strategy;

  // Report the agent would have sent in m given each true observation.
  const auto old_report = [&](Observation obs) -> Report {
    switch (obs) {
      case Observation::kNone: return Report::kNull;
      case Observation::kSaw0:
        return s.d1[0] == Disclosure::kReveal ? Report::kLow : Report::kNull;
      case Observation::kSaw1:
        return s.d1[1] == Disclosure::kReveal ? Report::kHigh : Report::kNull;
    }
    throw std::logic_error("bad observation");
  };
  const auto state_for = [&](Report truthful_r1) -> int {
    switch (truthful_r1) {
      case Report::kNull: return state_index(Observation::kNone, Report::kNull);
      case Report::kLow: return state_index(Observation::kSaw0, old_report(Observation::kSaw0));
      case Report::kHigh: return state_index(Observation::kSaw1, old_report(Observation::kSaw1));
    }
    throw std::logic_error("bad report");
  };

  Mechanism out;
  out.sigma1 = s.e1;
  for (Report r1 : kAllReports) {
    const int st = state_for(r1);
    out.sigma2[index_of(r1)] = s.e2[st];
    const Report old_r1 = kPrivateStates[st].r1;
    for (Report r2 : kAllReports) {
      Report old_r2 = Report::kNull;
      if (r2 != Report::kNull) {
        const int w = r2 == Report::kHigh ? 1 : 0;
        old_r2 = s.d2[st][w] == Disclosure::kReveal ? r2 : Report::kNull;
      }
      out.xhat[index_of(r1)][index_of(r2)] = m.xhat_at(old_r1, old_r2);
    }
  }

  // Punish detected deviations: a missing first report under a first-period
  // recommendation ends the relationship, and a missing second report after
  // a requested test is assigned 0 (forcing).
  if (out.sigma1) {
    out.sigma2[index_of(Report::kNull)] = false;
    for (Report r2 : kAllReports) out.xhat[index_of(Report::kNull)][index_of(r2)] = false;
  }
  return make_forcing(out);
}

namespace {

Rat case_assign_bias_w(const Params& p) {
  // pi*mu0*rho + pi*(1-mu0)*[pi + (1-pi)*rho] + (1-pi)*(1-k)
  const Rat one_minus_mu0 = Rat(1) - p.mu0;
  return p.pi * p.mu0 * p.rho +
         p.pi * one_minus_mu0 * (p.pi + p.one_minus_pi() * p.rho) +
         p.one_minus_pi() * (Rat(1) - p.k);
}

Rat case_result_dependent_w(const Params& p) {
  // (1-k)*[pi*mu0 + 1-pi] + pi*(1-mu0)*[pi + (1-pi)*rho]
  const Rat one_minus_mu0 = Rat(1) - p.mu0;
  return (Rat(1) - p.k) * (p.pi * p.mu0 + p.one_minus_pi()) +
         p.pi * one_minus_mu0 * (p.pi + p.one_minus_pi() * p.rho);
}

AssignmentMap follow_second_report() {
  AssignmentMap x{};
  for (Report r1 : kAllReports) x[index_of(r1)][index_of(Report::kHigh)] = true;
  return x;
}

Mechanism assign_bias_mechanism() {
  // Test only after a missing report; assign 1 after a favorable first
  // report regardless of the second, otherwise follow the second report.
  TestingPolicy policy;
  policy.sigma2 = {true, false, false};
  AssignmentMap x = follow_second_report();
  for (Report r2 : kAllReports) x[index_of(Report::kHigh)][index_of(r2)] = true;
  return with_policy(policy, x);
}

Mechanism result_dependent_mechanism() {
  return with_policy(result_dependent_policy(), follow_second_report());
}

Mechanism never_test_mechanism() {
  return with_policy(TestingPolicy{}, follow_second_report());
}

Mechanism no_free_signal_mechanism() {
  // Test after a missing report and follow only the requested test result.
  TestingPolicy policy;
  policy.sigma2 = {true, false, false};
  AssignmentMap x{};
  x[index_of(Report::kNull)][index_of(Report::kHigh)] = true;
  return with_policy(policy, x);
}

Rat best_response_w(const Params& p, const Mechanism& m) {
  return principal_payoff(play(p, m, best_response(p, m).strategy), p);
}

}  // namespace

ClosedFormResult optimal_closed_form(const Params& p) {
  ClosedFormResult result;
  result.region = classify_region(p);
  switch (result.region) {
    case RegionLabel::kIntermediateAssignBias:
      result.mechanism = assign_bias_mechanism();
      result.predicted_w = case_assign_bias_w(p);
      break;
    case RegionLabel::kIntermediateResultDependent:
      result.mechanism = result_dependent_mechanism();
      result.predicted_w = case_result_dependent_w(p);
      break;
    case RegionLabel::kIntermediateBoundary: {
      Mechanism a = assign_bias_mechanism();
      Mechanism b = result_dependent_mechanism();
      if (encode(b) < encode(a)) std::swap(a, b);
      result.mechanism = a;
      result.tie_mechanism = b;
      result.predicted_w = case_result_dependent_w(p);  // the two coincide at the boundary
      break;
    }
    case RegionLabel::kLowCosts:
      result.mechanism = baseline_mechanism(p);
      result.predicted_w = best_response_w(p, *result.mechanism);
      break;
    case RegionLabel::kHighCosts: {
      result.mechanism = never_test_mechanism();
      // pi + (1-pi)*(1 - mu2_null)
      const Rat mu2_null = belief_after_report(p, Report::kNull);
      result.predicted_w = p.pi + p.one_minus_pi() * (Rat(1) - mu2_null);
      break;
    }
    case RegionLabel::kNoFreeSignal:
      result.mechanism = no_free_signal_mechanism();
      result.predicted_w = best_response_w(p, *result.mechanism);
      break;
    case RegionLabel::kUncovered:
      break;
  }
  return result;
}

bool SensitivityBoundsReport::all_satisfied() const {
  return std::all_of(bounds.begin(), bounds.end(),
                     [](const SensitivityBound& b) { return b.satisfied; });
}

SensitivityBoundsReport ic_sensitivity_bounds(const Params& p, const Mechanism& m) {
  if (!is_ic(p, m))
    throw std::invalid_argument("sensitivity bounds apply to IC mechanisms only (index " +
                                std::to_string(encode(m)) + ")");
  const Rat gamma = p.c / p.one_minus_pi();
  SensitivityBoundsReport report;
  const auto push = [&](std::string name, Rat slack) {
    report.bounds.push_back({std::move(name), slack >= Rat(0), slack});
  };

  for (Report r1 : kAllReports) {
    if (m.sigma2_at(r1)) continue;
    if (r1 == Report::kNull ? m.sigma1 : (!m.sigma1 && p.pi.is_zero())) continue;
    const Rat mu2 = belief_after_report(p, r1);
    const Rat gain = mu2 * Rat(m.xhat_at(r1, Report::kHigh) ? 1 : 0) +
                     (Rat(1) - mu2) * Rat(m.xhat_at(r1, Report::kLow) ? 1 : 0) -
                     Rat(m.xhat_at(r1, Report::kNull) ? 1 : 0);
    const std::string rname = to_string(r1);
    push("no_test_gain_upper(" + rname + ")", gamma - gain);
    // The lower bound and the c = 0 flatness come from the disclosure
    // constraints, which only bind when free evidence can arrive.
    if (p.pi.is_zero()) continue;
    push("no_test_gain_lower(" + rname + ")", gain);
    if (p.c.is_zero()) {
      const bool flat = m.xhat_at(r1, Report::kNull) == m.xhat_at(r1, Report::kLow) &&
                        m.xhat_at(r1, Report::kLow) == m.xhat_at(r1, Report::kHigh);
      report.bounds.push_back({"flat_assignments(" + rname + ")", flat, Rat(flat ? 0 : -1)});
    }
  }

  if (!m.sigma1 && !p.pi.is_zero()) {
    // First-report continuation-value gain under full disclosure.
    Rat reported(0);
    for (int w = 0; w < 2; ++w) {
      const Rat weight = w == 1 ? p.mu0 : Rat(1) - p.mu0;
      const Rat mu2 = w == 1 ? p.rho : p.one_minus_rho();
      reported += weight * continuation_value(p, m, report_of_state(w == 1), mu2);
    }
    Rat concealed(0);
    for (int w = 0; w < 2; ++w) {
      const Rat weight = w == 1 ? p.mu0 : Rat(1) - p.mu0;
      const Rat mu2 = w == 1 ? p.rho : p.one_minus_rho();
      concealed += weight * continuation_value(p, m, Report::kNull, mu2);
    }
    const Rat gain = reported - concealed;
    push("first_report_gain_lower", gain);
    push("first_report_gain_upper", gamma - gain);
  }
  return report;
}

}  // namespace evreq
