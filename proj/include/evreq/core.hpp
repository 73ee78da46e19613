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
#include <optional>
#include <string>

#include "evreq/rat.hpp"

namespace evreq {

// A report is verifiable: the agent either discloses the observed state or
// stays silent. Ordering Null < Low < High is used wherever a canonical
// order is needed.
enum class Report : std::uint8_t { kNull = 0, kLow = 1, kHigh = 2 };

constexpr std::array<Report, 3> kAllReports = {Report::kNull, Report::kLow, Report::kHigh};

constexpr int index_of(Report r) { return static_cast<int>(r); }
const char* to_string(Report r);
Report report_of_state(bool omega);  // omega=1 -> High, omega=0 -> Low

// Model primitives. All five are exact rationals:
//   rho  - per-period state persistence, in (1/2, 1)
//   mu0  - prior probability that the first-period state is 1, in (0, 1)
//   pi   - probability a free signal reveals the state when no test is taken,
//          in [0, 1)
//   c    - agent's cost per test, >= 0
//   k    - principal's cost per test, >= 0
struct Params {
  Rat rho;
  Rat mu0;
  Rat pi;
  Rat c;
  Rat k;

  // Throws std::invalid_argument when any invariant fails.
  void validate() const;
  static Params make(Rat rho, Rat mu0, Rat pi, Rat c, Rat k);

  Rat one_minus_rho() const { return Rat(1) - rho; }
  Rat one_minus_pi() const { return Rat(1) - pi; }
};

// Public belief that the second-period state is 1, given the first report:
//   High -> rho,  Low -> 1 - rho,  Null -> rho*mu0 + (1-rho)*(1-mu0).
Rat belief_after_report(const Params& p, Report r1);

// Effective costs and the closed-form thresholds that partition the
// parameter space.
//
//   gamma      = c / (1 - pi)              agent's effective test cost
//   kappa      = k / (1 - pi)              principal's effective test cost
//   mu2_null   = rho*mu0 + (1-rho)*(1-mu0) no-report second-period belief
//   gamma_bar  = (1-rho)*[mu0 - (1-mu0)(1-pi)] / pi
//                profitability threshold of the test-early-and-conceal
//                deviation; undefined when pi = 0
//   gamma_bar_prime = mu0*(1-rho) / (1 - mu0*(1-pi))
//                profitability threshold of the deviation that re-tests
//                after concealing a bad first draw
//   kappa_bar  = (1-rho) / (1-pi)          switch point between the two
//                intermediate-cost optimal mechanisms
struct Thresholds {
  Rat gamma;
  Rat kappa;
  Rat mu2_null;
  std::optional<Rat> gamma_bar;  // absent iff pi = 0
  Rat gamma_bar_prime;
  Rat kappa_bar;
  Rat one_minus_rho;
};

Thresholds thresholds(const Params& p);

// Parameter regions with a known optimal mechanism. kUncovered is returned
// whenever no closed-form result applies at the point.
enum class RegionLabel : std::uint8_t {
  kLowCosts,                   // kappa, gamma both in (0, 1-rho]
  kIntermediateAssignBias,     // intermediate costs, kappa > kappa_bar, gamma >= gamma_bar
  kIntermediateResultDependent,// intermediate costs, kappa < kappa_bar or gamma < gamma_bar
  kIntermediateBoundary,       // intermediate costs, kappa = kappa_bar, gamma >= gamma_bar
  kHighCosts,                  // kappa above the no-test cutoff and gamma >= rho
  kNoFreeSignal,               // pi = 0 with intermediate kappa and gamma <= mu2_null
  kUncovered,
};

const char* to_string(RegionLabel label);
RegionLabel classify_region(const Params& p);

// Both intermediate cases require kappa <= min{mu2_null, 1-mu2_null}; the
// assignment-bias case additionally needs kappa > kappa_bar, which is
// feasible only when kappa_bar clears that ceiling.
bool assign_bias_case_feasible(const Params& p);

// Deterministic mechanism: a testing recommendation for each period (the
// second one conditioned on the first report) and an assignment for each
// report pair. 13 bits in total, 2^13 = 8192 mechanisms.
struct Mechanism {
  bool sigma1 = false;
  std::array<bool, 3> sigma2 = {false, false, false};              // by Report
  std::array<std::array<bool, 3>, 3> xhat = {{{false, false, false},
                                              {false, false, false},
                                              {false, false, false}}};  // [r1][r2]

  bool sigma2_at(Report r1) const { return sigma2[index_of(r1)]; }
  bool xhat_at(Report r1, Report r2) const { return xhat[index_of(r1)][index_of(r2)]; }

  // A mechanism is forcing when every requested-but-missing second report
  // leads to assignment 0: sigma2(r1)=1 implies xhat(r1, Null)=0.
  bool is_forcing() const;

  friend bool operator==(const Mechanism&, const Mechanism&) = default;
};

// Bit layout (little endian): bit 0 = sigma1; bits 1-3 = sigma2(Null),
// sigma2(Low), sigma2(High); bits 4-12 = xhat(r1, r2) row-major with r1
// outer and r2 inner, both in Null < Low < High order.
constexpr int kMechanismCount = 8192;
int encode(const Mechanism& m);
Mechanism decode(int index);  // throws std::out_of_range outside [0, 8191]

// A testing policy on its own (4 of the 13 bits).
struct TestingPolicy {
  bool sigma1 = false;
  std::array<bool, 3> sigma2 = {false, false, false};

  bool sigma2_at(Report r1) const { return sigma2[index_of(r1)]; }
  friend bool operator==(const TestingPolicy&, const TestingPolicy&) = default;
};

// Entrywise order on the 4-bit testing policy vector.
bool dominates(const TestingPolicy& a, const TestingPolicy& b);

}  // namespace evreq
