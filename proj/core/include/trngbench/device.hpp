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

#ifndef TRNGBENCH_DEVICE_HPP
#define TRNGBENCH_DEVICE_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trngbench/rng.hpp"

namespace trngbench {

/// Parametric behavior model of one vendor chip. Latency coefficients are
/// synthetic: they reproduce the observed curve shapes (per-request floor,
/// linear per-byte cost, a jump at every internal refill, an occasional
/// reseed stall) rather than any measured absolute timing. All fields can
/// be overridden through the profile configuration file.
struct ChipProfile {
  std::string name;
  std::uint32_t max_request;   // hard cap on bytes returned per call
  std::uint32_t chunk_size;    // internal buffer/refill granularity
  double base_latency_us;      // fixed per-call cost
  double per_byte_latency_us;  // marginal cost per delivered byte
  double per_chunk_latency_us; // cost per internal refill
  std::uint32_t reseed_period; // every Nth call pays the penalty; 0 = never
  double reseed_penalty_us;    // additive stall on those calls
};

class DeviceError : public std::runtime_error {
 public:
  enum class Kind {
    unknown_backend,
    precondition,
    source_exhausted,
    io,
  };

  DeviceError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Throws DeviceError if a profile field is out of range.
void validate(const ChipProfile& profile);

/// Built-in profile by vendor name: infineon, intel, atmel or sinosun.
/// Throws DeviceError listing the valid names otherwise.
ChipProfile make_profile(std::string_view name);

const std::vector<std::string>& builtin_profile_names();

/// Closed-form call cost for `delivered` bytes, reseed stalls excluded:
/// base + per_byte * k + per_chunk * ceil(k / chunk_size).
double model_duration_us(const ChipProfile& profile, std::uint32_t delivered);

struct DrawResult {
  std::vector<std::uint8_t> bytes;
  double duration_us = 0.0;  // simulated for chips, wall-clock otherwise
};

/// A random source. Stateful and single-owner: a Device may move between
/// threads but must never be used from two threads at once.
class Device {
 public:
  virtual ~Device() = default;

  /// Draws n random bytes. Simulated chips truncate to their max_request
  /// (success with a shorter payload, mirroring real chips); the other
  /// backends return exactly n bytes. n == 0 is a precondition error.
  virtual DrawResult get_random(std::uint32_t n) = 0;

  virtual const std::string& name() const = 0;

  /// Per-call byte cap, when the backend has one.
  virtual std::optional<std::uint32_t> max_request() const {
    return std::nullopt;
  }

  /// Serviced requests so far; increases by exactly 1 per get_random call.
  std::uint64_t calls() const { return calls_; }

 protected:
  std::uint64_t calls_ = 0;
};

/// Deterministic chip simulator: bytes come from a seeded ByteGenerator and
/// durations from the profile's latency model, so equal seeds plus equal
/// request sequences reproduce byte-identical output and timing.
class SimulatedChip final : public Device {
 public:
  SimulatedChip(ChipProfile profile, std::uint64_t seed,
                double bias_epsilon = 0.0);

  DrawResult get_random(std::uint32_t n) override;
  const std::string& name() const override { return profile_.name; }
  std::optional<std::uint32_t> max_request() const override {
    return profile_.max_request;
  }

  const ChipProfile& profile() const { return profile_; }

 private:
  ChipProfile profile_;
  ByteGenerator gen_;
};

/// Operating-system entropy (/dev/urandom), wall-clock timed.
class OsEntropyDevice final : public Device {
 public:
  OsEntropyDevice();

  DrawResult get_random(std::uint32_t n) override;
  const std::string& name() const override { return name_; }

 private:
  std::string name_;
  std::ifstream source_;
};

/// Replays a previously captured byte stream from a file; errors once the
/// file is exhausted.
class FileReplayDevice final : public Device {
 public:
  explicit FileReplayDevice(std::filesystem::path path);

  DrawResult get_random(std::uint32_t n) override;
  const std::string& name() const override { return name_; }

 private:
  std::string name_;
  std::filesystem::path path_;
  std::ifstream source_;
};

/// Pure in-process generator behind the Device interface. With a nonzero
/// epsilon this is the deliberately biased source used to exercise the
/// quality suite's failure paths.
class GeneratorDevice final : public Device {
 public:
  GeneratorDevice(std::uint64_t seed, double epsilon);

  DrawResult get_random(std::uint32_t n) override;
  const std::string& name() const override { return name_; }

 private:
  std::string name_;
  ByteGenerator gen_;
};

/// Opens a backend from a selector: a built-in profile name, "os",
/// "file:<path>", or "biased". `seed` and `epsilon` apply to the
/// deterministic backends only.
std::unique_ptr<Device> open_backend(const std::string& selector,
                                     std::uint64_t seed, double epsilon = 0.1);

/// Variant of open_backend that services simulated selectors from an
/// already-resolved profile (e.g. after configuration overrides).
std::unique_ptr<Device> open_backend(const std::string& selector,
                                     std::uint64_t seed, double epsilon,
                                     const std::optional<ChipProfile>& profile);

/// One full command round-trip over the wire formats: decodes `raw`,
/// services a valid request from the device, and encodes the response.
/// Failures never escape out-of-band; any decode or device error comes
/// back as an encoded failure response with an empty payload.
std::vector<std::uint8_t> submit_command(Device& device,
                                         std::span<const std::uint8_t> raw);

/// Return code carried by failure responses.
inline constexpr std::uint32_t kTpmFailCode = 9;

}  // namespace trngbench

#endif  // TRNGBENCH_DEVICE_HPP
