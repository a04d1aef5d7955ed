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

#include "trngbench/quality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include "trngbench/gamma.hpp"

namespace trngbench {

namespace {

constexpr std::uint64_t kCoordMax = (std::uint64_t{1} << 24) - 1;
constexpr std::uint64_t kRadiusSq = kCoordMax * kCoordMax;

bool point_inside(const std::uint8_t* group) {
  const std::uint64_t x = (std::uint64_t{group[0]} << 16) |
                          (std::uint64_t{group[1]} << 8) | group[2];
  const std::uint64_t y = (std::uint64_t{group[3]} << 16) |
                          (std::uint64_t{group[4]} << 8) | group[5];
  return x * x + y * y <= kRadiusSq;
}

MonteCarloPi pi_from_counts(std::uint64_t inside, std::uint64_t points) {
  MonteCarloPi result;
  result.points = points;
  result.estimate =
      4.0 * static_cast<double>(inside) / static_cast<double>(points);
  result.error_pct = 100.0 * std::fabs(result.estimate - std::numbers::pi) /
                     std::numbers::pi;
  return result;
}

double entropy_impl(std::span<const std::uint64_t> counts,
                    std::uint64_t total) {
  if (total == 0) {
    throw QualityError(QualityError::Kind::precondition,
                       "entropy needs at least one symbol");
  }
  double h = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h += -(p * std::log2(p));
  }
  return h;
}

// statistic = sum (O_i - E)^2 / E with E = total/k reduces to the exact
// integer form (k * sum O_i^2 - total^2) / total.
ChiSquareResult chi_square_impl(std::span<const std::uint64_t> counts,
                                std::uint64_t total) {
  if (total == 0) {
    throw QualityError(QualityError::Kind::precondition,
                       "chi-square needs at least one symbol");
  }
  const std::uint64_t k = counts.size();
  unsigned __int128 sum_sq = 0;
  for (std::uint64_t c : counts) {
    sum_sq += static_cast<unsigned __int128>(c) * c;
  }
  const unsigned __int128 numerator =
      k * sum_sq - static_cast<unsigned __int128>(total) * total;
  ChiSquareResult result;
  result.statistic =
      static_cast<double>(numerator) / static_cast<double>(total);
  result.exceed_prob =
      chi_square_exceedance(result.statistic, static_cast<double>(k - 1));
  return result;
}

// r = (n*s11 - s1^2) / (n*s2 - s1^2) with s1 = sum v_i, s2 = sum v_i^2,
// s11 = sum v_i * v_{i+1} over all n circular pairs.  Exact in 128-bit
// integers up to the single final division.
std::optional<double> circular_correlation(std::uint64_t n, std::uint64_t s1,
                                           std::uint64_t s2,
                                           std::uint64_t s11) {
  const __int128 s1_sq = static_cast<__int128>(s1) * static_cast<__int128>(s1);
  const __int128 num = static_cast<__int128>(n) * s11 - s1_sq;
  const __int128 den = static_cast<__int128>(n) * s2 - s1_sq;
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double entropy(const ByteHistogram& hist) {
  return entropy_impl(hist.counts, hist.total);
}

double entropy(const BitHistogram& hist) {
  return entropy_impl(hist.counts, hist.total);
}

ChiSquareResult chi_square(const ByteHistogram& hist) {
  return chi_square_impl(hist.counts, hist.total);
}

ChiSquareResult chi_square(const BitHistogram& hist) {
  return chi_square_impl(hist.counts, hist.total);
}

double arithmetic_mean(std::span<const std::uint8_t> stream) {
  if (stream.empty()) {
    throw QualityError(QualityError::Kind::precondition,
                       "mean needs at least one symbol");
  }
  std::uint64_t sum = 0;
  for (std::uint8_t v : stream) sum += v;
  return static_cast<double>(sum) / static_cast<double>(stream.size());
}

MonteCarloPi monte_carlo_pi(std::span<const std::uint8_t> stream) {
  if (stream.size() < 6) {
    throw QualityError(QualityError::Kind::precondition,
                       "Monte Carlo pi needs at least 6 bytes");
  }
  std::uint64_t inside = 0;
  std::uint64_t points = 0;
  for (std::size_t i = 0; i + 6 <= stream.size(); i += 6) {
    inside += point_inside(&stream[i]) ? 1 : 0;
    ++points;
  }
  return pi_from_counts(inside, points);
}

std::optional<double> serial_correlation(
    std::span<const std::uint8_t> stream) {
  if (stream.size() < 2) {
    throw QualityError(QualityError::Kind::precondition,
                       "serial correlation needs at least 2 symbols");
  }
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t s11 = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const std::uint64_t v = stream[i];
    s1 += v;
    s2 += v * v;
    s11 += v * stream[(i + 1) % stream.size()];
  }
  return circular_correlation(stream.size(), s1, s2, s11);
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> stream) {
  std::vector<std::uint8_t> bits;
  bits.reserve(stream.size() * 8);
  for (std::uint8_t byte : stream) {
    for (int k = 7; k >= 0; --k) {
      bits.push_back((byte >> k) & 1u);
    }
  }
  return bits;
}

void Analyzer::update(std::span<const std::uint8_t> chunk) {
  for (std::uint8_t b : chunk) {
    if (has_first_) {
      byte_pair_product_ += static_cast<std::uint64_t>(prev_byte_) * b;
      cross_byte_bit_pairs_ += (prev_byte_ & 1u) & (b >> 7);
    } else {
      has_first_ = true;
      first_byte_ = b;
    }
    prev_byte_ = b;
    hist_.add(b);
    group_[group_len_++] = b;
    if (group_len_ == 6) {
      group_len_ = 0;
      ++mc_points_;
      mc_inside_ += point_inside(group_.data()) ? 1 : 0;
    }
  }
}

QualityReport Analyzer::report() const {
  const std::uint64_t n = hist_.total;
  if (n < 6) {
    throw QualityError(QualityError::Kind::precondition,
                       "analysis needs at least 6 bytes");
  }

  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t ones = 0;
  std::uint64_t within_bit_pairs = 0;
  for (unsigned v = 0; v < 256; ++v) {
    const std::uint64_t c = hist_.counts[v];
    if (c == 0) continue;
    s1 += c * v;
    s2 += c * v * v;
    ones += c * static_cast<unsigned>(std::popcount(v));
    within_bit_pairs += c * static_cast<unsigned>(std::popcount(v & (v >> 1)));
  }
  const std::uint64_t s11 =
      byte_pair_product_ +
      static_cast<std::uint64_t>(prev_byte_) * first_byte_;

  QualityReport out;
  out.input_length = n;
  const MonteCarloPi pi = pi_from_counts(mc_inside_, mc_points_);

  MetricSet& bytes = out.byte_level;
  bytes.entropy = entropy(hist_);
  const ChiSquareResult byte_chi = chi_square(hist_);
  bytes.chi_square_stat = byte_chi.statistic;
  bytes.chi_square_exceed_prob = byte_chi.exceed_prob;
  bytes.mean = static_cast<double>(s1) / static_cast<double>(n);
  bytes.mc_pi_estimate = pi.estimate;
  bytes.mc_pi_error_pct = pi.error_pct;
  bytes.serial_correlation = circular_correlation(n, s1, s2, s11);

  const std::uint64_t nb = 8 * n;
  BitHistogram bit_hist;
  bit_hist.counts = {nb - ones, ones};
  bit_hist.total = nb;
  const std::uint64_t bit_pairs =
      within_bit_pairs + cross_byte_bit_pairs_ +
      ((prev_byte_ & 1u) & (first_byte_ >> 7));

  MetricSet& bits = out.bit_level;
  bits.entropy = entropy(bit_hist);
  const ChiSquareResult bit_chi = chi_square(bit_hist);
  bits.chi_square_stat = bit_chi.statistic;
  bits.chi_square_exceed_prob = bit_chi.exceed_prob;
  bits.mean = static_cast<double>(ones) / static_cast<double>(nb);
  // Monte Carlo pi at bit level reuses the byte-level computation; 24 bits
  // regrouped MSB-first reproduce the same coordinates.
  bits.mc_pi_estimate = pi.estimate;
  bits.mc_pi_error_pct = pi.error_pct;
  bits.serial_correlation = circular_correlation(nb, ones, ones, bit_pairs);

  return out;
}

QualityReport analyze(std::span<const std::uint8_t> stream) {
  Analyzer analyzer;
  analyzer.update(stream);
  return analyzer.report();
}

QualityReport analyze_file(const std::filesystem::path& file) {
  return split_analyze(file, 1).front();
}

std::vector<QualityReport> split_analyze(const std::filesystem::path& file,
                                         std::size_t pieces) {
  if (pieces < 1) {
    throw QualityError(QualityError::Kind::precondition,
                       "pieces must be at least 1");
  }
  std::error_code ec;
  const std::uintmax_t size = std::filesystem::file_size(file, ec);
  if (ec) {
    throw QualityError(QualityError::Kind::io,
                       "cannot stat " + file.string() + ": " + ec.message());
  }
  if (size / 6 < pieces) {
    throw QualityError(QualityError::Kind::precondition,
                       file.string() + " too short: need at least " +
                           std::to_string(pieces * 6) + " bytes for " +
                           std::to_string(pieces) + " pieces");
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw QualityError(QualityError::Kind::io,
                       "cannot open " + file.string());
  }

  const std::uint64_t base = size / pieces;
  std::vector<QualityReport> reports;
  reports.reserve(pieces);
  std::vector<std::uint8_t> buffer(std::size_t{1} << 20);
  for (std::size_t p = 0; p < pieces; ++p) {
    std::uint64_t want = base + (p + 1 == pieces ? size % pieces : 0);
    Analyzer analyzer;
    while (want > 0) {
      const std::uint64_t step = std::min<std::uint64_t>(want, buffer.size());
      in.read(reinterpret_cast<char*>(buffer.data()),
              static_cast<std::streamsize>(step));
      if (in.gcount() != static_cast<std::streamsize>(step)) {
        throw QualityError(QualityError::Kind::io,
                           "short read from " + file.string());
      }
      analyzer.update(std::span<const std::uint8_t>(buffer.data(), step));
      want -= step;
    }
    reports.push_back(analyzer.report());
  }
  return reports;
}

MetricLabel chi_square_label(double exceed_prob) {
  if (exceed_prob < 0.01 || exceed_prob > 0.99) return MetricLabel::fail;
  if (exceed_prob <= 0.05 || exceed_prob >= 0.95) return MetricLabel::suspect;
  return MetricLabel::ok;
}

std::string_view label_name(MetricLabel label) {
  switch (label) {
    case MetricLabel::ok:
      return "ok";
    case MetricLabel::suspect:
      return "suspect";
    case MetricLabel::fail:
      return "fail";
  }
  return "?";
}

double nearest_bucket(double exceed_prob) {
  static constexpr double kBuckets[] = {0.01, 0.05, 0.10, 0.25, 0.50,
                                        0.75, 0.90, 0.95, 0.99};
  double best = kBuckets[0];
  for (double bucket : kBuckets) {
    if (std::fabs(exceed_prob - bucket) < std::fabs(exceed_prob - best)) {
      best = bucket;
    }
  }
  return best;
}

bool has_failure(const QualityReport& report) {
  return chi_square_label(report.byte_level.chi_square_exceed_prob) ==
             MetricLabel::fail ||
         chi_square_label(report.bit_level.chi_square_exceed_prob) ==
             MetricLabel::fail;
}

}  // namespace trngbench
