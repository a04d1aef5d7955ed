/*
 * Copyright 2026 The trngbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TRNGBENCH_RNG_HPP
#define TRNGBENCH_RNG_HPP

#include <array>
#include <cstdint>
#include <span>

namespace trngbench {

/// splitmix64: a small, fast, statistically solid 64-bit generator whose
/// output is a pure function of the seed, identical on every platform.
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Derives an independent child stream; the parent advances by one step.
  constexpr SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// Streaming byte source over SplitMix64 with an optional linear frequency
/// tilt: with epsilon > 0, byte value v is drawn with probability
/// proportional to 1 + epsilon * v. epsilon == 0 emits the raw uniform
/// stream (low byte of each 64-bit word first). Output depends only on
/// (seed, epsilon, number of bytes drawn), never on how draws are chunked.
class ByteGenerator {
 public:
  explicit ByteGenerator(std::uint64_t seed, double epsilon = 0.0);

  std::uint8_t next_byte();
  void fill(std::span<std::uint8_t> out);

  double epsilon() const { return epsilon_; }

 private:
  SplitMix64 rng_;
  double epsilon_;
  std::uint64_t word_ = 0;
  int bytes_left_ = 0;
  std::array<double, 256> cdf_{};  // cumulative weights, used iff epsilon != 0
};

}  // namespace trngbench

#endif  // TRNGBENCH_RNG_HPP
