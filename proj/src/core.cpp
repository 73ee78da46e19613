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

#include "evreq/core.hpp"

#include <stdexcept>

namespace evreq {

const char* to_string(Report r) {
  switch (r) {
    case Report::kNull: return "null";
    case Report::kLow: return "low";
    case Report::kHigh: return "high";
  }
  return "?";
}

Report report_of_state(bool omega) { return omega ? Report::kHigh : Report::kLow; }

void Params::validate() const {
  const Rat half(1, 2);
  const Rat one(1);
  if (!(half < rho && rho < one))
    throw std::invalid_argument("rho must lie in (1/2, 1), got " + rho.str());
  if (!(Rat(0) < mu0 && mu0 < one))
    throw std::invalid_argument("mu0 must lie in (0, 1), got " + mu0.str());
  if (!(Rat(0) <= pi && pi < one))
    throw std::invalid_argument("pi must lie in [0, 1), got " + pi.str());
  if (c < Rat(0)) throw std::invalid_argument("c must be nonnegative, got " + c.str());
  if (k < Rat(0)) throw std::invalid_argument("k must be nonnegative, got " + k.str());
}

Params Params::make(Rat rho, Rat mu0, Rat pi, Rat c, Rat k) {
  Params p{rho, mu0, pi, c, k};
  p.validate();
  return p;
}

Rat belief_after_report(const Params& p, Report r1) {
  switch (r1) {
    case Report::kHigh: return p.rho;
    case Report::kLow: return p.one_minus_rho();
    case Report::kNull: return p.rho * p.mu0 + p.one_minus_rho() * (Rat(1) - p.mu0);
  }
  throw std::logic_error("bad report");
}

Thresholds thresholds(const Params& p) {
  p.validate();
  Thresholds t;
  const Rat one_minus_pi = p.one_minus_pi();
  t.one_minus_rho = p.one_minus_rho();
  t.gamma = p.c / one_minus_pi;
  t.kappa = p.k / one_minus_pi;
  t.mu2_null = belief_after_report(p, Report::kNull);
  if (!p.pi.is_zero()) {
    t.gamma_bar = t.one_minus_rho * (p.mu0 - (Rat(1) - p.mu0) * one_minus_pi) / p.pi;
  }
  t.gamma_bar_prime = p.mu0 * t.one_minus_rho / (Rat(1) - p.mu0 * one_minus_pi);
  t.kappa_bar = t.one_minus_rho / one_minus_pi;
  return t;
}

const char* to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::kLowCosts: return "low_costs";
    case RegionLabel::kIntermediateAssignBias: return "intermediate_assign_bias";
    case RegionLabel::kIntermediateResultDependent: return "intermediate_result_dependent";
    case RegionLabel::kIntermediateBoundary: return "intermediate_boundary";
    case RegionLabel::kHighCosts: return "high_costs";
    case RegionLabel::kNoFreeSignal: return "no_free_signal";
    case RegionLabel::kUncovered: return "uncovered";
  }
  return "?";
}

RegionLabel classify_region(const Params& p) {
  p.validate();
  const Thresholds t = thresholds(p);
  const Rat min_belief = min(t.mu2_null, Rat(1) - t.mu2_null);
  const bool intermediate_kappa = t.one_minus_rho < t.kappa && t.kappa <= min_belief;

  if (p.pi.is_zero()) {
    if (intermediate_kappa && t.gamma <= t.mu2_null) return RegionLabel::kNoFreeSignal;
  } else {
    const bool intermediate_gamma = t.one_minus_rho < t.gamma && t.gamma <= t.mu2_null;
    if (intermediate_kappa && intermediate_gamma) {
      if (t.gamma < *t.gamma_bar) return RegionLabel::kIntermediateResultDependent;
      if (t.kappa > t.kappa_bar) return RegionLabel::kIntermediateAssignBias;
      if (t.kappa == t.kappa_bar) return RegionLabel::kIntermediateBoundary;
      return RegionLabel::kIntermediateResultDependent;
    }
  }
  if (Rat(0) < t.kappa && t.kappa <= t.one_minus_rho && Rat(0) < t.gamma &&
      t.gamma <= t.one_minus_rho)
    return RegionLabel::kLowCosts;
  if (t.kappa > min_belief && t.gamma >= p.rho) return RegionLabel::kHighCosts;
  return RegionLabel::kUncovered;
}

bool assign_bias_case_feasible(const Params& p) {
  const Thresholds t = thresholds(p);
  return t.kappa_bar < min(t.mu2_null, Rat(1) - t.mu2_null);
}

bool Mechanism::is_forcing() const {
  for (Report r1 : kAllReports) {
    if (sigma2_at(r1) && xhat_at(r1, Report::kNull)) return false;
  }
  return true;
}

int encode(const Mechanism& m) {
  int index = m.sigma1 ? 1 : 0;
  for (int i = 0; i < 3; ++i) {
    if (m.sigma2[i]) index |= 1 << (1 + i);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (m.xhat[i][j]) index |= 1 << (4 + 3 * i + j);
    }
  }
  return index;
}

Mechanism decode(int index) {
  if (index < 0 || index >= kMechanismCount)
    throw std::out_of_range("mechanism index out of range: " + std::to_string(index));
  Mechanism m;
  m.sigma1 = (index & 1) != 0;
  for (int i = 0; i < 3; ++i) m.sigma2[i] = (index >> (1 + i)) & 1;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.xhat[i][j] = (index >> (4 + 3 * i + j)) & 1;
  }
  return m;
}

bool dominates(const TestingPolicy& a, const TestingPolicy& b) {
  if (a.sigma1 < b.sigma1) return false;
  for (int i = 0; i < 3; ++i) {
    if (a.sigma2[i] < b.sigma2[i]) return false;
  }
  return true;
}

}  // namespace evreq
