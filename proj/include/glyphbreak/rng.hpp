// Copyright 2026 The glyphbreak Authors.
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

// Seeded randomness. Every random choice in the library flows through
// SplitMix64 (Steele, Lea & Flood 2014). Results are identical across
// compilers, standard libraries and platforms; no std:: distribution is
// used.

#ifndef GLYPHBREAK_RNG_HPP_
#define GLYPHBREAK_RNG_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "glyphbreak/error.hpp"

namespace glyphbreak {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return Mix(state_);
  }

  // Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("SplitMix64::Below: bound is zero");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double Unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Stable per-item seed derived from a master seed and an item id. Independent
// of evaluation order.
constexpr std::uint64_t DeriveSeed(std::uint64_t master_seed,
                                   std::uint64_t item_id) {
  return SplitMix64::Mix(master_seed ^
                         SplitMix64::Mix(item_id + 0x632BE59BD9B4E019ULL));
}

// Chooses k distinct indices from [0, n) uniformly (partial Fisher-Yates) and
// returns them in ascending order.
inline std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                         std::size_t k,
                                                         SplitMix64& rng) {
  if (k > n) throw InvalidArgument("cannot sample more items than exist");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_RNG_HPP_
