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

#ifndef TRNGBENCH_BENCH_HPP_
#define TRNGBENCH_BENCH_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trngbench/device.hpp"

namespace trngbench {

// Request-size sweep: one record per size in [min_size, max_size] stepping
// by `step`, each averaged over `repetitions` consecutive calls.
struct SweepConfig {
  std::uint32_t min_size = 1;
  std::uint32_t max_size = 2048;
  std::uint32_t step = 1;
  std::uint32_t repetitions = 10;
};

void validate(const SweepConfig& config);

struct BenchRecord {
  std::uint32_t request_size = 0;
  std::uint32_t returned_size = 0;
  double mean_duration_us = 0.0;
  double throughput_bps = 0.0;  // returned_size * 1e6 / mean_duration_us
};

// A device failure mid-sweep carries everything measured so far plus the
// size whose measurement failed.
class SweepError : public std::runtime_error {
 public:
  SweepError(std::vector<BenchRecord> completed, std::uint32_t failing_size,
             const std::string& message)
      : std::runtime_error(message),
        completed_(std::move(completed)),
        failing_size_(failing_size) {}

  const std::vector<BenchRecord>& completed() const { return completed_; }
  std::uint32_t failing_size() const { return failing_size_; }

 private:
  std::vector<BenchRecord> completed_;
  std::uint32_t failing_size_;
};

// Runs the sweep; records are ordered by ascending request size.  The
// repetitions for one size are batched (all consecutive) before moving on.
std::vector<BenchRecord> sweep(Device& device, const SweepConfig& config);

// Header `request_size,returned_size,mean_duration_us,throughput_bps`, one
// line per record, durations to 3 decimals and throughput to 2, final line
// newline-terminated.  Returns the number of bytes written.
std::size_t write_csv(std::span<const BenchRecord> records, std::ostream& out);

// Bulk collection (the Generate job): loops get_random(request_size) and
// appends exactly the returned bytes to the sink until `total` bytes are
// written or cancellation is observed.  When the final call returns more
// bytes than remain, the surplus is discarded, never buffered.
enum class CollectStatus { completed, aborted };

struct CollectSummary {
  std::uint64_t bytes_written = 0;
  double mean_throughput_bps = 0.0;
  CollectStatus status = CollectStatus::completed;
};

struct CollectProgress {
  std::uint64_t bytes_written = 0;
  std::uint64_t calls = 0;
  double mean_throughput_bps = 0.0;
};

struct CollectOptions {
  std::uint64_t total = 0;
  std::uint32_t request_size = 2048;
  std::uint64_t progress_every = 100;  // calls between progress reports
};

using ProgressFn = std::function<void(const CollectProgress&)>;

// Sink write failure, carrying how much had been written when it struck.
class CollectIoError : public std::runtime_error {
 public:
  CollectIoError(std::uint64_t bytes_written, const std::string& message)
      : std::runtime_error(message), bytes_written_(bytes_written) {}

  std::uint64_t bytes_written() const { return bytes_written_; }

 private:
  std::uint64_t bytes_written_;
};

// `progress` (may be empty) fires after every `progress_every`-th call and
// once at the end when the job did not land on that cadence; `cancel` is
// polled before each device call, so cancellation is observed within one
// call.  Both may be touched from another thread; the device may not.
CollectSummary collect(Device& device, const CollectOptions& options,
                       std::ostream& sink, const ProgressFn& progress,
                       const std::atomic<bool>& cancel);

}  // namespace trngbench

#endif  // TRNGBENCH_BENCH_HPP_
