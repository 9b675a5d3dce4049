// Copyright 2026 The cfgperf Authors
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

#ifndef CFGPERF_RNG_H_
#define CFGPERF_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace cfgperf {

// splitmix64 step. Used both to expand a 64-bit seed into generator state and
// to derive independent child seeds.
std::uint64_t SplitMix64(std::uint64_t& state);

// Combines a sequence of words into one seed; order-sensitive.
std::uint64_t HashSeed(std::initializer_list<std::uint64_t> words);
std::uint64_t HashString(std::uint64_t seed, std::string_view text);

// xoshiro256** seeded through splitmix64. Every sampling decision in the
// project goes through this class so results are byte-stable across
// compilers and platforms (no std:: distributions are used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t NextU64();

  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();

  // Standard normal via Box-Muller (one value per call, no caching).
  double Normal();

 private:
  std::uint64_t s_[4];
};

// First `count` entries of a Fisher-Yates shuffle of 0..n-1: position i is
// swapped with i + UniformBelow(n - i). Returned in draw order.
std::vector<std::size_t> PartialShuffle(std::size_t n, std::size_t count,
                                        Rng& rng);

}  // namespace cfgperf

#endif  // CFGPERF_RNG_H_
