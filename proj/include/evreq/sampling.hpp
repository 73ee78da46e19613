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

#include <random>

#include "evreq/core.hpp"

namespace evreq {

// Random rational in (lo, hi) or (lo, hi], exact. Denominators stay small
// so that downstream exact arithmetic cannot overflow.
Rat sample_rat_between(std::mt19937_64& rng, const Rat& lo, const Rat& hi, bool include_hi,
                       int denominator_cap = 64);

// Random valid parameter point with pi, c, k strictly positive.
Params sample_params(std::mt19937_64& rng);

}  // namespace evreq
