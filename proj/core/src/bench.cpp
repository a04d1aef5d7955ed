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

#include "trngbench/bench.hpp"

#include <algorithm>
#include <cstdio>

namespace trngbench {

namespace {

double throughput_bps(std::uint64_t bytes, double duration_us) {
  if (duration_us <= 0.0) return 0.0;
  return static_cast<double>(bytes) * 1e6 / duration_us;
}

}  // namespace

void validate(const SweepConfig& config) {
  if (config.min_size < 1 || config.min_size > config.max_size) {
    throw std::invalid_argument(
        "sweep bounds must satisfy 1 <= min_size <= max_size");
  }
  if (config.step < 1) {
    throw std::invalid_argument("sweep step must be at least 1");
  }
  if (config.repetitions < 1) {
    throw std::invalid_argument("sweep repetitions must be at least 1");
  }
}

std::vector<BenchRecord> sweep(Device& device, const SweepConfig& config) {
  validate(config);
  std::vector<BenchRecord> records;
  records.reserve((config.max_size - config.min_size) / config.step + 1);
  for (std::uint64_t size = config.min_size; size <= config.max_size;
       size += config.step) {
    const auto request = static_cast<std::uint32_t>(size);
    double total_us = 0.0;
    std::uint32_t returned = 0;
    for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
      DrawResult draw;
      try {
        draw = device.get_random(request);
      } catch (const DeviceError& e) {
        throw SweepError(std::move(records), request,
                         std::string("sweep failed at size ") +
                             std::to_string(request) + ": " + e.what());
      }
      total_us += draw.duration_us;
      if (rep == 0) returned = static_cast<std::uint32_t>(draw.bytes.size());
    }
    const double mean_us = total_us / config.repetitions;
    records.push_back(
        {request, returned, mean_us, throughput_bps(returned, mean_us)});
  }
  return records;
}

std::size_t write_csv(std::span<const BenchRecord> records,
                      std::ostream& out) {
  static constexpr char kHeader[] =
      "request_size,returned_size,mean_duration_us,throughput_bps\n";
  std::size_t written = sizeof(kHeader) - 1;
  out.write(kHeader, static_cast<std::streamsize>(written));
  char line[128];
  for (const BenchRecord& record : records) {
    const int len =
        std::snprintf(line, sizeof(line), "%u,%u,%.3f,%.2f\n",
                      record.request_size, record.returned_size,
                      record.mean_duration_us, record.throughput_bps);
    out.write(line, len);
    written += static_cast<std::size_t>(len);
  }
  if (!out) {
    throw CollectIoError(0, "CSV write failed");
  }
  return written;
}

CollectSummary collect(Device& device, const CollectOptions& options,
                       std::ostream& sink, const ProgressFn& progress,
                       const std::atomic<bool>& cancel) {
  if (options.total < 1) {
    throw std::invalid_argument("collect total must be at least 1");
  }
  if (options.request_size < 1) {
    throw std::invalid_argument("collect request size must be at least 1");
  }
  const std::uint64_t cadence =
      options.progress_every < 1 ? 1 : options.progress_every;

  std::uint64_t written = 0;
  std::uint64_t calls = 0;
  double elapsed_us = 0.0;
  CollectStatus status = CollectStatus::completed;

  auto emit = [&] {
    if (!progress) return;
    progress({written, calls, throughput_bps(written, elapsed_us)});
  };

  while (written < options.total) {
    if (cancel.load(std::memory_order_relaxed)) {
      status = CollectStatus::aborted;
      break;
    }
    DrawResult draw = device.get_random(options.request_size);
    ++calls;
    elapsed_us += draw.duration_us;
    const std::uint64_t take =
        std::min<std::uint64_t>(draw.bytes.size(), options.total - written);
    sink.write(reinterpret_cast<const char*>(draw.bytes.data()),
               static_cast<std::streamsize>(take));
    if (!sink) {
      throw CollectIoError(written, "sink write failed after " +
                                        std::to_string(written) + " bytes");
    }
    written += take;
    if (calls % cadence == 0) emit();
  }
  if (calls % cadence != 0) emit();

  return {written, throughput_bps(written, elapsed_us), status};
}

}  // namespace trngbench
