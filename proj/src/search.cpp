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

#include "evreq/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace evreq {

std::vector<Mechanism> enumerate_all() {
  std::vector<Mechanism> all;
  all.reserve(kMechanismCount);
  for (int i = 0; i < kMechanismCount; ++i) all.push_back(decode(i));
  return all;
}

const char* to_string(SolveMode mode) {
  return mode == SolveMode::kStrategic ? "strategic" : "noagency";
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("EVREQ_JOBS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Rat strategic_value(const Params& p, const Mechanism& m) {
  return principal_payoff(play(p, m, best_response(p, m).strategy), p);
}

OptimumResult brute_force_optimum(const Params& p, SolveMode mode, int jobs) {
  p.validate();
  std::vector<Rat> w(kMechanismCount);
  parallel_for(kMechanismCount, jobs, [&](int i) {
    const Mechanism m = decode(i);
    w[i] = mode == SolveMode::kNoAgency ? baseline_payoff(p, m) : strategic_value(p, m);
  });
  OptimumResult result;
  result.mode = mode;
  result.best_w = w[0];
  for (int i = 1; i < kMechanismCount; ++i) {
    if (w[i] > result.best_w) result.best_w = w[i];
  }
  for (int i = 0; i < kMechanismCount; ++i) {
    if (w[i] == result.best_w) result.argmax.push_back(i);
  }
  result.canonical = result.argmax.front();
  return result;
}

bool same_play(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.atoms.size() != b.atoms.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    const OutcomeAtom& x = a.atoms[i];
    const OutcomeAtom& y = b.atoms[i];
    if (x.omega1 != y.omega1 || x.o1 != y.o1 || x.r1 != y.r1 || x.e1 != y.e1 ||
        x.omega2 != y.omega2 || x.o2 != y.o2 || x.r2 != y.r2 || x.e2 != y.e2 || x.x != y.x ||
        !(x.prob == y.prob))
      return false;
  }
  return true;
}

namespace {

// Best response coincides with obedient, fully disclosing play on path.
bool obedient_on_path(const Params& p, const Mechanism& m) {
  const OutcomeDistribution br_play = play(p, m, best_response(p, m).strategy);
  const OutcomeDistribution ob_play = play(p, m, obedient_strategy(m));
  return same_play(br_play, ob_play);
}

}  // namespace

std::vector<TestingPolicy> full_disclosure_set(const Params& p) {
  const AssignmentMap efficient = efficient_assignments(p);
  std::vector<TestingPolicy> result;
  for (int bits = 0; bits < 16; ++bits) {
    TestingPolicy policy;
    policy.sigma1 = bits & 1;
    for (int i = 0; i < 3; ++i) policy.sigma2[i] = (bits >> (1 + i)) & 1;
    const Mechanism m = make_forcing(with_policy(policy, efficient));
    if (obedient_on_path(p, m)) result.push_back(policy);
  }
  return result;
}

AgentStrategy compliant_wait_strategy() {
  AgentStrategy s;
  s.e1 = false;
  s.d1 = {Disclosure::kConceal, Disclosure::kReveal};
  for (int i = 0; i < 5; ++i) {
    s.e2[i] = false;
    s.d2[i] = {Disclosure::kConceal, Disclosure::kReveal};
  }
  s.e2[state_index(Observation::kNone, Report::kNull)] = true;
  return s;
}

AgentStrategy compliant_wait_retest_strategy() {
  AgentStrategy s = compliant_wait_strategy();
  s.e2[state_index(Observation::kSaw0, Report::kNull)] = true;
  return s;
}

namespace {

DeviationComparison compare_against_baseline(const Params& p, const AgentStrategy& deviation,
                                             const AgentStrategy& compliant) {
  const Mechanism m = baseline_mechanism(p);
  DeviationComparison cmp;
  cmp.deviation_value = agent_payoff(play(p, m, deviation), p);
  cmp.compliant_value = agent_payoff(play(p, m, compliant), p);
  cmp.strictly_profitable = cmp.deviation_value > cmp.compliant_value;
  return cmp;
}

}  // namespace

DeviationComparison gaming_comparison(const Params& p) {
  return compare_against_baseline(p, gaming_strategy(), compliant_wait_strategy());
}

DeviationComparison retest_gaming_comparison(const Params& p) {
  return compare_against_baseline(p, gaming_retest_strategy(), compliant_wait_retest_strategy());
}

bool VerificationReport::all_passed() const {
  for (const auto& c : claims) {
    if (c.applicable && !c.informational && !c.passed) return false;
  }
  return true;
}

const ClaimResult* VerificationReport::find(const std::string& id) const {
  for (const auto& c : claims) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

struct ClaimContext {
  const Params& p;
  Thresholds th;
  RegionLabel label;
  Mechanism baseline;
  bool intermediate_kappa;
  bool intermediate_gamma;
  int jobs;
};

ClaimResult claim_baseline_noagency(const ClaimContext& ctx) {
  ClaimResult c{"baseline_noagency_optimal", true, false, false, ""};
  const OptimumResult opt = brute_force_optimum(ctx.p, SolveMode::kNoAgency, ctx.jobs);
  const Rat closed_w = baseline_payoff(ctx.p, ctx.baseline);
  const int idx = encode(ctx.baseline);
  const bool in_argmax = std::binary_search(opt.argmax.begin(), opt.argmax.end(), idx);
  c.passed = closed_w == opt.best_w && in_argmax;
  c.detail = "closed W " + closed_w.str() + ", oracle W " + opt.best_w.str() + ", index " +
             std::to_string(idx) + (in_argmax ? " in argmax" : " NOT in argmax");
  return c;
}

ClaimResult claim_test_pattern(const ClaimContext& ctx) {
  ClaimResult c{"second_period_test_pattern", ctx.intermediate_kappa, false, false, ""};
  if (!c.applicable) return c;
  const BestResponse br = best_response(ctx.p, ctx.baseline);
  const auto& e2 = br.strategy.e2;
  const bool after_high = e2[state_index(Observation::kSaw1, Report::kHigh)];
  const bool after_low = e2[state_index(Observation::kSaw0, Report::kLow)];
  const bool after_null = e2[state_index(Observation::kNone, Report::kNull)];
  const bool after_concealed = e2[state_index(Observation::kSaw0, Report::kNull)];
  // The strict form at gamma = 1-rho reflects the tie rule: an indifferent
  // agent follows the (no-test) recommendation at a disclosed report.
  const bool expected_low = ctx.th.gamma < ctx.th.one_minus_rho;
  const bool expected_null = ctx.th.gamma <= ctx.th.mu2_null;
  const bool expected_concealed = ctx.th.gamma <= ctx.th.one_minus_rho;
  c.passed = !after_high && after_low == expected_low && after_null == expected_null &&
             after_concealed == expected_concealed;
  c.detail = "e2 pattern (high,low,null,concealed) = (" + std::to_string(after_high) + "," +
             std::to_string(after_low) + "," + std::to_string(after_null) + "," +
             std::to_string(after_concealed) + ")";
  return c;
}

ClaimResult claim_gaming_threshold(const ClaimContext& ctx) {
  ClaimResult c{"gaming_threshold", false, false, false, ""};
  c.applicable = !ctx.p.pi.is_zero() && ctx.intermediate_kappa && ctx.intermediate_gamma;
  if (!c.applicable) return c;
  const DeviationComparison cmp = gaming_comparison(ctx.p);
  const bool predicted = ctx.th.gamma < *ctx.th.gamma_bar;
  const bool tie_ok =
      ctx.th.gamma != *ctx.th.gamma_bar || cmp.deviation_value == cmp.compliant_value;
  c.passed = cmp.strictly_profitable == predicted && tie_ok;
  c.detail = "deviation " + cmp.deviation_value.str() + " vs compliant " +
             cmp.compliant_value.str() + ", gamma_bar " + ctx.th.gamma_bar->str();
  return c;
}

ClaimResult claim_retest_threshold(const ClaimContext& ctx) {
  ClaimResult c{"retest_gaming_threshold", false, false, false, ""};
  c.applicable = !ctx.p.pi.is_zero() && ctx.intermediate_kappa &&
                 ctx.th.gamma <= ctx.th.one_minus_rho;
  if (!c.applicable) return c;
  const DeviationComparison cmp = retest_gaming_comparison(ctx.p);
  const bool predicted = ctx.th.gamma < ctx.th.gamma_bar_prime;
  const bool tie_ok =
      ctx.th.gamma != ctx.th.gamma_bar_prime || cmp.deviation_value == cmp.compliant_value;
  c.passed = cmp.strictly_profitable == predicted && tie_ok;
  c.detail = "deviation " + cmp.deviation_value.str() + " vs compliant " +
             cmp.compliant_value.str() + ", threshold " + ctx.th.gamma_bar_prime.str();
  return c;
}

ClaimResult claim_result_dependent_discloses(const ClaimContext& ctx) {
  ClaimResult c{"result_dependent_discloses", false, false, false, ""};
  c.applicable = ctx.th.one_minus_rho < ctx.th.gamma && ctx.th.gamma <= ctx.th.mu2_null;
  if (!c.applicable) return c;
  const Mechanism m =
      make_forcing(with_policy(result_dependent_policy(), efficient_assignments(ctx.p)));
  c.passed = obedient_on_path(ctx.p, m);
  c.detail = c.passed ? "best response obedient and fully disclosing" : "best response deviates";
  return c;
}

ClaimResult claim_full_disclosure_minimality(const ClaimContext& ctx) {
  ClaimResult c{"full_disclosure_minimality", false, false, false, ""};
  // Without free signals the no-test disclosure nodes never arise, so
  // policies below the result-dependent one qualify vacuously.
  c.applicable = !ctx.p.pi.is_zero() && ctx.th.one_minus_rho < ctx.th.gamma &&
                 ctx.th.gamma < ctx.th.mu2_null;
  if (!c.applicable) return c;
  const std::vector<TestingPolicy> set = full_disclosure_set(ctx.p);
  const TestingPolicy rd = result_dependent_policy();
  bool contains_rd = false;
  bool all_dominate = true;
  for (const auto& policy : set) {
    if (policy == rd) contains_rd = true;
    if (!dominates(policy, rd)) all_dominate = false;
  }
  c.passed = contains_rd && all_dominate;
  c.detail = "set size " + std::to_string(set.size());
  return c;
}

ClaimResult claim_ic_optimum_tests_after_null(const ClaimContext& ctx,
                                              const std::vector<Rat>& strategic_w,
                                              const Rat& strategic_best) {
  ClaimResult c{"ic_optimum_tests_after_null", false, false, false, ""};
  c.applicable = !ctx.p.pi.is_zero() && ctx.intermediate_kappa && ctx.intermediate_gamma;
  if (!c.applicable) return c;
  std::vector<char> ic(kMechanismCount, 0);
  parallel_for(kMechanismCount, ctx.jobs,
               [&](int i) { ic[i] = is_ic(ctx.p, decode(i)) ? 1 : 0; });
  Rat ic_best(-1);
  for (int i = 0; i < kMechanismCount; ++i) {
    if (ic[i] && strategic_w[i] > ic_best) ic_best = strategic_w[i];
  }
  bool shape_ok = true;
  int bad_index = -1;
  for (int i = 0; i < kMechanismCount; ++i) {
    if (!ic[i] || !(strategic_w[i] == ic_best)) continue;
    const Mechanism m = decode(i);
    if (!(m.sigma2_at(Report::kNull) && m.xhat_at(Report::kNull, Report::kHigh) &&
          !m.xhat_at(Report::kNull, Report::kLow))) {
      shape_ok = false;
      bad_index = i;
      break;
    }
  }
  c.passed = shape_ok && ic_best == strategic_best;
  c.detail = shape_ok ? "IC optimum W " + ic_best.str()
                      : "witness index " + std::to_string(bad_index);
  return c;
}

ClaimResult claim_relabeling_totality(const ClaimContext& ctx,
                                      const std::vector<Rat>& strategic_w) {
  ClaimResult c{"relabeling_totality", true, false, false, ""};
  std::atomic<int> failures{0};
  std::atomic<int> witness{-1};
  std::vector<Rat> transformed_w(kMechanismCount);
  parallel_for(kMechanismCount, ctx.jobs, [&](int i) {
    const Mechanism m = decode(i);
    const Mechanism mt = revelation_transform(ctx.p, m);
    const OutcomeDistribution orig = play(ctx.p, m, best_response(ctx.p, m).strategy);
    const OutcomeDistribution trans = play(ctx.p, mt, best_response(ctx.p, mt).strategy);
    transformed_w[i] = principal_payoff(trans, ctx.p);
    if (!ic_check(ctx.p, mt).all_satisfied() || !same_outcomes(orig, trans)) {
      failures.fetch_add(1);
      witness.store(i);
    }
  });
  Rat best_transformed = transformed_w[0];
  for (int i = 1; i < kMechanismCount; ++i)
    if (transformed_w[i] > best_transformed) best_transformed = transformed_w[i];
  Rat best_orig = strategic_w[0];
  for (int i = 1; i < kMechanismCount; ++i)
    if (strategic_w[i] > best_orig) best_orig = strategic_w[i];
  c.passed = failures.load() == 0 && best_transformed == best_orig;
  c.detail = failures.load() == 0
                 ? "all 8192 transforms IC and outcome-equivalent"
                 : "witness index " + std::to_string(witness.load());
  return c;
}

ClaimResult claim_ic_matches_best_response(const ClaimContext& ctx) {
  ClaimResult c{"ic_matches_best_response", true, false, false, ""};
  std::atomic<int> disagreements{0};
  std::atomic<int> witness{-1};
  parallel_for(kMechanismCount, ctx.jobs, [&](int i) {
    const Mechanism m = decode(i);
    if (!m.is_forcing()) return;
    const bool ic = ic_check(ctx.p, m).all_satisfied();
    const bool obedient = obedient_on_path(ctx.p, m);
    if (ic != obedient) {
      disagreements.fetch_add(1);
      witness.store(i);
    }
  });
  c.passed = disagreements.load() == 0;
  c.detail = c.passed ? "no disagreements over forcing mechanisms"
                      : "witness index " + std::to_string(witness.load());
  return c;
}

ClaimResult claim_sensitivity_bounds(const ClaimContext& ctx) {
  ClaimResult c{"sensitivity_bounds_scan", true, false, false, ""};
  std::atomic<int> failures{0};
  std::atomic<int> witness{-1};
  parallel_for(kMechanismCount, ctx.jobs, [&](int i) {
    const Mechanism m = decode(i);
    if (!is_ic(ctx.p, m)) return;
    if (!ic_sensitivity_bounds(ctx.p, m).all_satisfied()) {
      failures.fetch_add(1);
      witness.store(i);
    }
  });
  c.passed = failures.load() == 0;
  c.detail = c.passed ? "all IC mechanisms within bounds"
                      : "witness index " + std::to_string(witness.load());
  return c;
}

ClaimResult claim_region_closed_form(const ClaimContext& ctx, const OptimumResult& strategic) {
  ClaimResult c{"region_closed_form_optimal", ctx.label != RegionLabel::kUncovered, false, false,
                std::string(to_string(ctx.label))};
  if (!c.applicable) return c;
  const ClosedFormResult cf = optimal_closed_form(ctx.p);
  const int idx = encode(*cf.mechanism);
  bool ok = *cf.predicted_w == strategic.best_w &&
            std::binary_search(strategic.argmax.begin(), strategic.argmax.end(), idx);
  if (cf.tie_mechanism) {
    ok = ok && std::binary_search(strategic.argmax.begin(), strategic.argmax.end(),
                                  encode(*cf.tie_mechanism));
  }
  if (ctx.label == RegionLabel::kNoFreeSignal && ok) {
    // The stated mechanism must reproduce the baseline's obedient play.
    const OutcomeDistribution lhs =
        play(ctx.p, *cf.mechanism, best_response(ctx.p, *cf.mechanism).strategy);
    const OutcomeDistribution rhs = play(ctx.p, ctx.baseline, obedient_strategy(ctx.baseline));
    ok = same_play(lhs, rhs);
  }
  c.passed = ok;
  c.detail += ", predicted W " + cf.predicted_w->str() + ", oracle W " + strategic.best_w.str();
  return c;
}

ClaimResult claim_noagency_dominates(const OptimumResult& noagency,
                                     const OptimumResult& strategic) {
  ClaimResult c{"noagency_dominates_strategic", true, false, false, ""};
  c.passed = noagency.best_w >= strategic.best_w;
  c.detail = "noagency " + noagency.best_w.str() + " vs strategic " + strategic.best_w.str();
  return c;
}

ClaimResult claim_gaming_threshold_below_null_belief(const ClaimContext& ctx) {
  ClaimResult c{"gaming_threshold_below_null_belief", !ctx.p.pi.is_zero(), false, true, ""};
  if (!c.applicable) return c;
  c.passed = *ctx.th.gamma_bar < ctx.th.mu2_null;
  c.detail = "gamma_bar " + ctx.th.gamma_bar->str() + " vs mu2(null) " + ctx.th.mu2_null.str() +
             (c.passed ? " (holds)" : " (fails here)");
  return c;
}

}  // namespace

VerificationReport verify_claims(const Params& p, int jobs) {
  p.validate();
  ClaimContext ctx{p,
                   thresholds(p),
                   classify_region(p),
                   baseline_mechanism(p),
                   false,
                   false,
                   jobs};
  const Rat min_belief = min(ctx.th.mu2_null, Rat(1) - ctx.th.mu2_null);
  ctx.intermediate_kappa = ctx.th.one_minus_rho < ctx.th.kappa && ctx.th.kappa <= min_belief;
  ctx.intermediate_gamma =
      ctx.th.one_minus_rho < ctx.th.gamma && ctx.th.gamma <= ctx.th.mu2_null;

  // Strategic values are shared by several claims.
  std::vector<Rat> strategic_w(kMechanismCount);
  parallel_for(kMechanismCount, jobs,
               [&](int i) { strategic_w[i] = strategic_value(p, decode(i)); });
  OptimumResult strategic;
  strategic.mode = SolveMode::kStrategic;
  strategic.best_w = strategic_w[0];
  for (int i = 1; i < kMechanismCount; ++i)
    if (strategic_w[i] > strategic.best_w) strategic.best_w = strategic_w[i];
  for (int i = 0; i < kMechanismCount; ++i)
    if (strategic_w[i] == strategic.best_w) strategic.argmax.push_back(i);
  strategic.canonical = strategic.argmax.front();

  const OptimumResult noagency = brute_force_optimum(p, SolveMode::kNoAgency, jobs);

  VerificationReport report;
  report.params = p;
  report.claims.push_back(claim_baseline_noagency(ctx));
  report.claims.push_back(claim_test_pattern(ctx));
  report.claims.push_back(claim_gaming_threshold(ctx));
  report.claims.push_back(claim_retest_threshold(ctx));
  report.claims.push_back(claim_result_dependent_discloses(ctx));
  report.claims.push_back(claim_full_disclosure_minimality(ctx));
  report.claims.push_back(claim_ic_optimum_tests_after_null(ctx, strategic_w, strategic.best_w));
  report.claims.push_back(claim_relabeling_totality(ctx, strategic_w));
  report.claims.push_back(claim_ic_matches_best_response(ctx));
  report.claims.push_back(claim_sensitivity_bounds(ctx));
  report.claims.push_back(claim_region_closed_form(ctx, strategic));
  report.claims.push_back(claim_noagency_dominates(noagency, strategic));
  report.claims.push_back(claim_gaming_threshold_below_null_belief(ctx));
  return report;
}

std::vector<RegionReport> sweep(const Params& base,
                                const std::vector<std::pair<Rat, Rat>>& grid_ck, int jobs) {
  if (grid_ck.empty()) throw std::invalid_argument("empty sweep grid");
  std::vector<Params> points;
  points.reserve(grid_ck.size());
  for (const auto& [c, k] : grid_ck) {
    points.push_back(Params::make(base.rho, base.mu0, base.pi, c, k));
  }
  std::vector<RegionReport> reports(points.size());
  parallel_for(static_cast<int>(points.size()), jobs, [&](int i) {
    const Params& p = points[i];
    RegionReport r;
    r.params = p;
    const Thresholds t = thresholds(p);
    r.gamma = t.gamma;
    r.kappa = t.kappa;
    r.label = classify_region(p);
    const OptimumResult opt = brute_force_optimum(p, SolveMode::kStrategic, 1);
    r.brute_force_w = opt.best_w;
    r.canonical_index = opt.canonical;
    const ClosedFormResult cf = optimal_closed_form(p);
    if (cf.mechanism) {
      r.closed_form_w = cf.predicted_w;
      bool match = *cf.predicted_w == opt.best_w &&
                   std::binary_search(opt.argmax.begin(), opt.argmax.end(),
                                      encode(*cf.mechanism));
      if (cf.tie_mechanism) {
        match = match && std::binary_search(opt.argmax.begin(), opt.argmax.end(),
                                            encode(*cf.tie_mechanism));
        r.notes = "tie between two optimal mechanisms";
      }
      r.closed_form_in_argmax = match;
    } else {
      r.notes = "no closed form at this point";
    }
    reports[i] = std::move(r);
  });
  return reports;
}

}  // namespace evreq
