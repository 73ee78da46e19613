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

#include "evreq/rat.hpp"

#include <charconv>

namespace evreq {

std::string Rat::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  std::size_t slash = text.find('/');
  std::string_view num_part = text.substr(0, slash == std::string_view::npos ? text.size() : slash);
  std::int64_t num = 0;
  auto [np, nec] = std::from_chars(num_part.data(), num_part.data() + num_part.size(), num);
  if (nec != std::errc() || np != num_part.data() + num_part.size()) fail();
  if (slash == std::string_view::npos) return Rat(num);
  std::string_view den_part = text.substr(slash + 1);
  if (den_part.empty()) fail();
  std::int64_t den = 0;
  auto [dp, dec] = std::from_chars(den_part.data(), den_part.data() + den_part.size(), den);
  if (dec != std::errc() || dp != den_part.data() + den_part.size()) fail();
  if (den <= 0) throw std::invalid_argument("denominator must be positive: '" + std::string(text) + "'");
  return Rat(num, den);
}

}  // namespace evreq
