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

#include "evreq/sampling.hpp"

#include <stdexcept>

namespace evreq {

namespace {

// floor(r * d) for r >= 0 and d > 0.
std::int64_t floor_times(const Rat& r, std::int64_t d) {
  const __int128 n = static_cast<__int128>(r.num()) * d;
  return static_cast<std::int64_t>(n / r.den());
}

}  // namespace

Rat sample_rat_between(std::mt19937_64& rng, const Rat& lo, const Rat& hi, bool include_hi,
                       int denominator_cap) {
  if (!(lo < hi)) throw std::invalid_argument("sample interval is empty");
  std::uniform_int_distribution<int> den_dist(8, denominator_cap);
  for (std::int64_t den = den_dist(rng);; den *= 2) {
    const std::int64_t lo_floor = floor_times(lo, den);
    std::int64_t n_min = lo_floor + 1;
    if (Rat(n_min, den) <= lo) ++n_min;  // lo itself on the grid
    std::int64_t n_max = floor_times(hi, den);
    if (!include_hi && Rat(n_max, den) == hi) --n_max;
    if (n_min > n_max) continue;  // interval finer than the grid; refine
    std::uniform_int_distribution<std::int64_t> num_dist(n_min, n_max);
    return Rat(num_dist(rng), den);
  }
}

Params sample_params(std::mt19937_64& rng) {
  const Rat rho = sample_rat_between(rng, Rat(1, 2), Rat(1), false);
  const Rat mu0 = sample_rat_between(rng, Rat(0), Rat(1), false);
  const Rat pi = sample_rat_between(rng, Rat(0), Rat(9, 10), true);
  const Rat c = sample_rat_between(rng, Rat(0), Rat(1), true);
  const Rat k = sample_rat_between(rng, Rat(0), Rat(1), true);
  return Params::make(rho, mu0, pi, c, k);
}

}  // namespace evreq
