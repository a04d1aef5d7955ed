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

#ifndef TRNGBENCH_QUALITY_HPP_
#define TRNGBENCH_QUALITY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trngbench {

class QualityError : public std::runtime_error {
 public:
  enum class Kind {
    precondition,  // empty/too-short input, bad piece count
    io,            // unreadable input file
  };

  QualityError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ByteHistogram {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;

  void add(std::uint8_t value) {
    ++counts[value];
    ++total;
  }
};

struct BitHistogram {
  std::array<std::uint64_t, 2> counts{};  // [0] zeros, [1] ones
  std::uint64_t total = 0;

  void add(std::uint8_t bit) {
    ++counts[bit & 1u];
    ++total;
  }
};

// One level (byte or bit) of the five-metric battery.  serial_correlation
// is empty when the input is constant (zero variance).
struct MetricSet {
  double entropy = 0.0;
  double chi_square_stat = 0.0;
  double chi_square_exceed_prob = 0.0;
  double mean = 0.0;
  double mc_pi_estimate = 0.0;
  double mc_pi_error_pct = 0.0;
  std::optional<double> serial_correlation;
};

struct QualityReport {
  MetricSet byte_level;
  MetricSet bit_level;
  std::uint64_t input_length = 0;  // bytes
};

// --- Standalone metrics -----------------------------------------------------

// Shannon entropy in bits per symbol: -sum p_i * log2(p_i).
double entropy(const ByteHistogram& hist);
double entropy(const BitHistogram& hist);

struct ChiSquareResult {
  double statistic = 0.0;
  double exceed_prob = 0.0;  // Q(df/2, statistic/2), df = symbols - 1
};

ChiSquareResult chi_square(const ByteHistogram& hist);
ChiSquareResult chi_square(const BitHistogram& hist);

// Mean symbol value; works for byte streams and for unpacked 0/1 streams.
double arithmetic_mean(std::span<const std::uint8_t> stream);

struct MonteCarloPi {
  double estimate = 0.0;
  double error_pct = 0.0;
  std::uint64_t points = 0;
};

// Non-overlapping 6-byte groups; the first three bytes form a 24-bit x
// coordinate (big-endian), the next three a 24-bit y; a point counts as
// inside when x^2 + y^2 <= (2^24 - 1)^2.  Trailing bytes (< 6) are ignored.
MonteCarloPi monte_carlo_pi(std::span<const std::uint8_t> stream);

// Pearson correlation between the sequence and its successor, with circular
// wraparound (the last symbol pairs with the first).  Empty when the input
// is constant.
std::optional<double> serial_correlation(std::span<const std::uint8_t> stream);

// Unpacks bytes into 0/1 symbols, most significant bit first.  The bit-level
// battery equals the byte-level operations applied to this stream (except
// chi-square, which uses two cells, and Monte Carlo pi, which is shared).
std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> stream);

// --- Streaming analyzer -----------------------------------------------------

// Single-pass accumulator for the full byte- and bit-level battery.  Feeding
// the same stream in different chunkings yields bit-identical reports.
class Analyzer {
 public:
  Analyzer() = default;

  void update(std::span<const std::uint8_t> chunk);

  // Computes the report for everything seen so far (needs >= 6 bytes).
  // Non-destructive: more updates may follow.
  QualityReport report() const;

  std::uint64_t bytes_seen() const { return hist_.total; }

 private:
  ByteHistogram hist_;
  bool has_first_ = false;
  std::uint8_t first_byte_ = 0;
  std::uint8_t prev_byte_ = 0;
  // Sum of v_i * v_{i+1} over consecutive byte pairs (wrap term added at
  // report time) and count of adjacent 1,1 bit pairs that straddle a byte
  // boundary; everything else derives from the histogram.
  std::uint64_t byte_pair_product_ = 0;
  std::uint64_t cross_byte_bit_pairs_ = 0;
  std::array<std::uint8_t, 6> group_{};
  std::size_t group_len_ = 0;
  std::uint64_t mc_points_ = 0;
  std::uint64_t mc_inside_ = 0;
};

// One-shot analysis of an in-memory stream (needs >= 6 bytes).
QualityReport analyze(std::span<const std::uint8_t> stream);

// Streaming analysis of a whole file.
QualityReport analyze_file(const std::filesystem::path& file);

// Divides the file into `pieces` contiguous segments of floor(size/pieces)
// bytes, any remainder going to the last segment, and analyzes each.
std::vector<QualityReport> split_analyze(const std::filesystem::path& file,
                                         std::size_t pieces);

// --- Report labeling --------------------------------------------------------

enum class MetricLabel { ok, suspect, fail };

// Chi-square exceedance labeling: < 1% or > 99% fail, 1-5% or 95-99%
// suspect, everything else ok.
MetricLabel chi_square_label(double exceed_prob);

std::string_view label_name(MetricLabel label);

// Nearest value from the conventional report buckets
// {0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.95, 0.99}.
double nearest_bucket(double exceed_prob);

// True when either level's chi-square is labeled fail.
bool has_failure(const QualityReport& report);

}  // namespace trngbench

#endif  // TRNGBENCH_QUALITY_HPP_
