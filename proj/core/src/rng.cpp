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

#include "trngbench/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace trngbench {

ByteGenerator::ByteGenerator(std::uint64_t seed, double epsilon)
    : rng_(seed), epsilon_(epsilon) {
  if (epsilon_ == 0.0) {
    return;
  }
  // All 256 weights must stay positive for the tilt to define a distribution.
  if (epsilon_ <= -1.0 / 255.0) {
    throw std::invalid_argument("bias epsilon must be greater than -1/255");
  }
  double total = 0.0;
  for (int v = 0; v < 256; ++v) {
    total += 1.0 + epsilon_ * v;
  }
  double acc = 0.0;
  for (int v = 0; v < 256; ++v) {
    acc += (1.0 + epsilon_ * v) / total;
    cdf_[static_cast<std::size_t>(v)] = acc;
  }
  cdf_[255] = 1.0;
}

std::uint8_t ByteGenerator::next_byte() {
  if (epsilon_ != 0.0) {
    const double u = rng_.next_double();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::uint8_t>(it - cdf_.begin());
  }
  if (bytes_left_ == 0) {
    word_ = rng_.next();
    bytes_left_ = 8;
  }
  const auto b = static_cast<std::uint8_t>(word_);
  word_ >>= 8;
  --bytes_left_;
  return b;
}

void ByteGenerator::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    b = next_byte();
  }
}

}  // namespace trngbench
