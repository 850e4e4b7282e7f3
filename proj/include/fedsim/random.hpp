// Copyright 2026 The fedsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded randomness that reproduces across standard libraries.
//
// The engine is std::mt19937_64 (MT19937-64, 312 x 64-bit words of state),
// whose output sequence is fixed by the C++ standard. The standard
// distributions and std::shuffle are not, so bounded draws and shuffles are
// implemented here: rejection sampling on the raw 64-bit output, and
// Fisher-Yates from the back.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace fedsim {

using Rng = std::mt19937_64;

/// One step of SplitMix64; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Generator for a named purpose ("first_round", "debate", "probe:J. Powell"),
/// so enabling one stage's randomness never shifts another's.
Rng make_stream(std::uint64_t seed, std::string_view purpose);

/// Uniform integer in [0, n). n must be > 0.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace fedsim
