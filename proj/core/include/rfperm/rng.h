/*
 * Copyright 2026 The rfperm Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RFPERM_RNG_H_
#define RFPERM_RNG_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace rfperm {

// Mixes a 64-bit value with the SplitMix64 finalizer.
std::uint64_t MixBits(std::uint64_t x);

// Derives an independent seed for child stream `index` of `seed`. Used to
// give every tree, replicate and permutation loop its own stream so results
// do not depend on scheduling order.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

// xoshiro256** engine seeded through SplitMix64. Satisfies
// UniformRandomBitGenerator so it can drive <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Independent stream keyed by (this stream's seed, index). Does not advance
  // this stream.
  Rng Child(std::uint64_t index) const { return Rng(DeriveSeed(seed_, index)); }

  std::uint64_t seed() const { return seed_; }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();

  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t Below(std::uint64_t bound);

  // Standard normal draw (Marsaglia polar method, no cached state).
  double Normal();

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

// `k` distinct indices from [0, n), uniformly without replacement, in draw
// order. Requires k <= n.
std::vector<std::size_t> SampleWithoutReplacement(std::size_t n, std::size_t k,
                                                  Rng& rng);

// Uniform random permutation of [0, n).
std::vector<std::size_t> RandomPermutation(std::size_t n, Rng& rng);

}  // namespace rfperm

#endif  // RFPERM_RNG_H_
