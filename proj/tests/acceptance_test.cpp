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

// End-to-end acceptance battery.  Each test covers one numbered criterion
// and prints a single PASS/FAIL line for it, so the suite output doubles as
// the release checklist.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "reference_metrics.hpp"
#include "subprocess.hpp"
#include "trngbench/bench.hpp"
#include "trngbench/device.hpp"
#include "trngbench/gamma.hpp"
#include "trngbench/quality.hpp"
#include "trngbench/rng.hpp"
#include "trngbench/wire.hpp"

namespace trngbench {
namespace {

class AcceptanceTest : public ::testing::Test {
 protected:
  void Criterion(int number, std::string title) {
    number_ = number;
    title_ = std::move(title);
  }

  void TearDown() override {
    std::printf("[criterion %d] %s — %s\n", number_,
                HasFailure() ? "FAIL" : "PASS", title_.c_str());
    std::fflush(stdout);
  }

  static std::string work_dir() { return ::testing::TempDir(); }

  static std::vector<std::uint8_t> uniform_stream(std::uint64_t seed,
                                                  std::size_t n) {
    std::vector<std::uint8_t> data(n);
    ByteGenerator gen(seed);
    gen.fill(data);
    return data;
  }

  int number_ = 0;
  std::string title_;
};

TEST_F(AcceptanceTest, Criterion01WireProtocol) {
  Criterion(1, "GetRandom wire format round-trips");

  const std::vector<std::uint8_t> golden = {
      0x00, 0xC1, 0x00, 0x00, 0x00, 0x0E, 0x00, 0x00,
      0x00, 0x46, 0x00, 0x00, 0x00, 0x10};
  EXPECT_EQ(encode_request(make_request(16)), golden);

  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> count(1, 0xFFFFFFFFu);
  std::uniform_int_distribution<int> payload_len(0, 2048);
  for (int i = 0; i < 10000; ++i) {
    const GetRandomRequest request = make_request(count(rng));
    ASSERT_EQ(decode_request(encode_request(request)), request);
    std::vector<std::uint8_t> payload(
        static_cast<std::size_t>(payload_len(rng)));
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng());
    const GetRandomResponse response = make_success_response(payload);
    ASSERT_EQ(decode_response(encode_response(response)), response);
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed.count(), 1.0);
}

TEST_F(AcceptanceTest, Criterion02VendorTruncation) {
  Criterion(2, "vendor caps surface as truncated success responses");

  const struct {
    const char* name;
    std::uint32_t cap;
  } chips[] = {{"infineon", 1259}, {"intel", 1226}, {"atmel", 768},
               {"sinosun", 2048}};
  for (const auto& chip : chips) {
    SimulatedChip device(make_profile(chip.name), 1);
    const GetRandomResponse response = decode_response(
        submit_command(device, encode_request(make_request(2048))));
    EXPECT_EQ(response.return_code, 0u) << chip.name;
    EXPECT_EQ(response.random_bytes_size, chip.cap) << chip.name;
    EXPECT_EQ(response.random_bytes.size(), chip.cap) << chip.name;
    EXPECT_EQ(response.param_size, 14u + chip.cap) << chip.name;
  }
}

TEST_F(AcceptanceTest, Criterion03LatencyDiscontinuities) {
  Criterion(3, "refill boundaries produce the modeled latency jumps");

  const ChipProfile intel = make_profile("intel");
  for (std::uint32_t m = 1; m <= 19; ++m) {
    EXPECT_EQ(model_duration_us(intel, 64 * m + 1) -
                  model_duration_us(intel, 64 * m),
              49200.0)
        << "intel boundary at " << 64 * m;
  }

  const ChipProfile sinosun = make_profile("sinosun");
  for (std::uint32_t m = 1; m <= 102; ++m) {
    EXPECT_EQ(model_duration_us(sinosun, 20 * m + 1) -
                  model_duration_us(sinosun, 20 * m),
              26000.0)
        << "sinosun boundary at " << 20 * m;
  }

  const ChipProfile atmel = make_profile("atmel");
  EXPECT_EQ(model_duration_us(atmel, 539) - model_duration_us(atmel, 538),
            30120.0);
}

TEST_F(AcceptanceTest, Criterion04ReseedCadence) {
  Criterion(4, "infineon pays the reseed stall on every 30th call");

  SimulatedChip chip(make_profile("infineon"), 17);
  const double quiet = model_duration_us(chip.profile(), 1259);
  int penalized = 0;
  for (int call = 1; call <= 300; ++call) {
    const double d = chip.get_random(1259).duration_us;
    if (call % 30 == 0) {
      EXPECT_EQ(d, quiet + 50000.0) << "call " << call;
      ++penalized;
    } else {
      EXPECT_EQ(d, quiet) << "call " << call;
    }
  }
  EXPECT_EQ(penalized, 10);
}

TEST_F(AcceptanceTest, Criterion05ThroughputAnchors) {
  Criterion(5, "throughput anchors: intel near 500 B/s, peak ratio near 30");

  SimulatedChip intel(make_profile("intel"), 4);
  const auto intel_records = sweep(intel, {1024, 1024, 1, 10});
  ASSERT_EQ(intel_records.size(), 1u);
  const double intel_bps = intel_records.front().throughput_bps;
  EXPECT_NEAR(intel_bps, 500.0, 50.0);  // within 10%

  SimulatedChip infineon(make_profile("infineon"), 4);
  const auto infineon_records = sweep(infineon, {1, 2048, 1, 10});
  double infineon_peak = 0.0;
  for (const auto& r : infineon_records) {
    infineon_peak = std::max(infineon_peak, r.throughput_bps);
  }

  SimulatedChip sinosun(make_profile("sinosun"), 4);
  const auto sinosun_records = sweep(sinosun, {1, 2048, 1, 10});
  double sinosun_peak = 0.0;
  for (const auto& r : sinosun_records) {
    sinosun_peak = std::max(sinosun_peak, r.throughput_bps);
  }

  const double ratio = infineon_peak / sinosun_peak;
  EXPECT_NEAR(ratio, 30.0, 4.5);  // within 15%
}

TEST_F(AcceptanceTest, Criterion06UniformStreamQuality) {
  Criterion(6, "the uniform generator passes the full battery at 10 MB");

  const QualityReport report = analyze(uniform_stream(20260821, 10000000));
  EXPECT_GE(report.byte_level.entropy, 7.99);
  EXPECT_NEAR(report.byte_level.mean, 127.5, 0.15);
  ASSERT_TRUE(report.byte_level.serial_correlation.has_value());
  EXPECT_LE(std::fabs(*report.byte_level.serial_correlation), 0.002);
  EXPECT_LE(report.byte_level.mc_pi_error_pct, 0.2);
  EXPECT_GE(report.byte_level.chi_square_exceed_prob, 0.01);
  EXPECT_LE(report.byte_level.chi_square_exceed_prob, 0.99);
  EXPECT_GE(report.bit_level.chi_square_exceed_prob, 0.01);
  EXPECT_LE(report.bit_level.chi_square_exceed_prob, 0.99);
  EXPECT_FALSE(has_failure(report));

  // Mean stability at 100 MB.
  const std::vector<std::uint8_t> large = uniform_stream(20260822, 100000000);
  EXPECT_NEAR(arithmetic_mean(large), 127.5, 0.05);
}

TEST_F(AcceptanceTest, Criterion07OracleAgreement) {
  Criterion(7, "streaming metrics agree with naive reference oracles");

  std::mt19937 rng(20260820);
  std::uniform_real_distribution<double> log_len(std::log(6.0),
                                                 std::log(1.0e6));
  const auto close = [](double actual, double expected) {
    return std::fabs(actual - expected) <=
           1e-9 * std::max(1.0, std::fabs(expected));
  };
  int mismatches = 0;
  for (int round = 0; round < 1000 && mismatches < 10; ++round) {
    const auto len = static_cast<std::size_t>(std::exp(log_len(rng)));
    std::vector<std::uint8_t> data(len);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    const QualityReport report = analyze(data);

    const MetricSet& bytes = report.byte_level;
    const reference::PiEstimate pi = reference::monte_carlo_pi(data);
    const auto scc = reference::serial_correlation(data);
    const std::vector<std::uint8_t> bits = reference::bits_of(data);
    const MetricSet& bit_level = report.bit_level;
    const auto bit_scc = reference::serial_correlation(bits);

    const bool ok =
        close(bytes.entropy, reference::entropy(data, 256)) &&
        close(bytes.chi_square_stat, reference::chi_square_stat(data, 256)) &&
        close(bytes.mean, reference::mean(data)) &&
        close(bytes.mc_pi_estimate, pi.estimate) &&
        close(bytes.mc_pi_error_pct, pi.error_pct) &&
        bytes.serial_correlation.has_value() == scc.has_value() &&
        (!scc || close(*bytes.serial_correlation, *scc)) &&
        close(bit_level.entropy, reference::entropy(bits, 2)) &&
        close(bit_level.chi_square_stat,
              reference::chi_square_stat(bits, 2)) &&
        close(bit_level.mean, reference::mean(bits)) &&
        bit_level.serial_correlation.has_value() == bit_scc.has_value() &&
        (!bit_scc || close(*bit_level.serial_correlation, *bit_scc));
    EXPECT_TRUE(ok) << "round " << round << ", length " << len;
    if (!ok) ++mismatches;
  }

  // The tail probability against the independent quadrature oracle.
  for (double stat : {0.001, 0.5, 1.6, 3.84, 10.0, 50.0}) {
    EXPECT_NEAR(chi_square_exceedance(stat, 1.0),
                reference::chi_square_tail(stat, 1.0), 1e-8)
        << "df 1 stat " << stat;
  }
  for (double stat : {150.0, 200.0, 254.0, 255.0, 300.0, 400.0, 800.0}) {
    EXPECT_NEAR(chi_square_exceedance(stat, 255.0),
                reference::chi_square_tail(stat, 255.0), 1e-8)
        << "df 255 stat " << stat;
  }
}

TEST_F(AcceptanceTest, Criterion08DegenerateInputs) {
  Criterion(8, "degenerate streams hit their closed-form metric values");

  const QualityReport zeros = analyze(std::vector<std::uint8_t>(6000, 0));
  EXPECT_EQ(zeros.byte_level.entropy, 0.0);
  EXPECT_EQ(zeros.byte_level.mean, 0.0);
  EXPECT_EQ(zeros.byte_level.mc_pi_estimate, 4.0);
  EXPECT_DOUBLE_EQ(zeros.byte_level.mc_pi_error_pct, 27.323954473516274);
  EXPECT_FALSE(zeros.byte_level.serial_correlation.has_value());
  EXPECT_TRUE(has_failure(zeros));

  std::vector<std::uint8_t> cycle(24 * 256);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    cycle[i] = static_cast<std::uint8_t>(i & 0xFF);
  }
  const QualityReport uniform = analyze(cycle);
  EXPECT_EQ(uniform.byte_level.entropy, 8.0);
  EXPECT_EQ(uniform.byte_level.mean, 127.5);
  EXPECT_EQ(uniform.byte_level.chi_square_stat, 0.0);
  EXPECT_EQ(uniform.byte_level.chi_square_exceed_prob, 1.0);
  EXPECT_TRUE(has_failure(uniform));  // impossibly perfect

  std::vector<std::uint8_t> alternating(200);
  for (std::size_t i = 0; i < alternating.size(); ++i) {
    alternating[i] = i % 2 == 0 ? 0x00 : 0xFF;
  }
  const QualityReport anti = analyze(alternating);
  ASSERT_TRUE(anti.byte_level.serial_correlation.has_value());
  EXPECT_EQ(*anti.byte_level.serial_correlation, -1.0);
  ASSERT_TRUE(anti.bit_level.serial_correlation.has_value());
  EXPECT_EQ(*anti.bit_level.serial_correlation, 0.75);
}

TEST_F(AcceptanceTest, Criterion09BiasDetection) {
  Criterion(9, "a 0.1-biased source is flagged, in-process and via the CLI");

  std::vector<std::uint8_t> biased(10000000);
  ByteGenerator gen(12, 0.1);
  gen.fill(biased);
  const QualityReport report = analyze(biased);
  EXPECT_LT(report.byte_level.chi_square_exceed_prob, 1e-4);
  EXPECT_TRUE(has_failure(report));

  const std::string capture = work_dir() + "acceptance_biased.bin";
  const testing::RunResult collect = testing::run_cli(
      "collect --backend biased --seed 12 --epsilon 0.1 --total 1048576"
      " --request-size 65536 --out " + capture,
      work_dir());
  ASSERT_EQ(collect.exit_code, 0);
  const testing::RunResult analyze_run =
      testing::run_cli("analyze " + capture, work_dir());
  EXPECT_EQ(analyze_run.exit_code, 4);
  EXPECT_NE(analyze_run.out.find("[fail]"), std::string::npos);
  std::filesystem::remove(capture);
}

TEST_F(AcceptanceTest, Criterion10CliSweepDeterminism) {
  Criterion(10, "a full CLI sweep is fast and byte-for-byte reproducible");

  const std::string out_a = work_dir() + "acceptance_sweep_a.csv";
  const std::string out_b = work_dir() + "acceptance_sweep_b.csv";
  const std::string args =
      "bench --backend sinosun --seed 7 --min 1 --max 2048 --step 1"
      " --reps 10 --out ";

  const auto start = std::chrono::steady_clock::now();
  const testing::RunResult a = testing::run_cli(args + out_a, work_dir());
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed.count(), 10.0);
  ASSERT_EQ(a.exit_code, 0);

  const testing::RunResult b = testing::run_cli(args + out_b, work_dir());
  ASSERT_EQ(b.exit_code, 0);

  const std::string csv = testing::slurp(out_a);
  EXPECT_EQ(csv, testing::slurp(out_b));
  EXPECT_EQ(static_cast<std::size_t>(
                std::count(csv.begin(), csv.end(), '\n')),
            2049u);  // header + one row per size
  std::filesystem::remove(out_a);
  std::filesystem::remove(out_b);
}

TEST_F(AcceptanceTest, Criterion11CliCollectFidelity) {
  Criterion(11, "CLI collection delivers exact bytes and honors interrupts");

  const std::string capture = work_dir() + "acceptance_collect.bin";
  const testing::RunResult r = testing::run_cli(
      "collect --backend atmel --seed 33 --total 10485760"
      " --request-size 2048 --out " + capture,
      work_dir());
  ASSERT_EQ(r.exit_code, 0);
  ASSERT_EQ(std::filesystem::file_size(capture), 10485760u);

  // The file must be the chip's contiguous stream: a twin generator's
  // prefix, with the final call's surplus discarded.
  const std::string data = testing::slurp(capture);
  std::vector<std::uint8_t> expected(10485760);
  ByteGenerator gen(33);
  gen.fill(expected);
  EXPECT_TRUE(std::equal(data.begin(), data.end(), expected.begin(),
                         [](char c, std::uint8_t b) {
                           return static_cast<std::uint8_t>(c) == b;
                         }));
  std::filesystem::remove(capture);

  const std::string partial = work_dir() + "acceptance_interrupted.bin";
  const testing::RunResult interrupted = testing::run_cli_interrupted(
      "collect --backend biased --seed 4 --total 10000000000"
      " --request-size 65536 --out " + partial,
      work_dir(), std::chrono::milliseconds(400));
  EXPECT_EQ(interrupted.exit_code, 3);
  EXPECT_NE(interrupted.out.find("(aborted)"), std::string::npos);
  const auto size = std::filesystem::file_size(partial);
  EXPECT_GT(size, 0u);
  EXPECT_LT(size, 10000000000u);
  std::filesystem::remove(partial);
}

}  // namespace
}  // namespace trngbench
