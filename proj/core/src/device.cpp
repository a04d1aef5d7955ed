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

#include "trngbench/device.hpp"

#include <algorithm>
#include <chrono>

#include "trngbench/wire.hpp"

namespace trngbench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point start, Clock::time_point end) {
  return std::chrono::duration<double, std::micro>(end - start).count();
}

void require_positive(std::uint32_t n) {
  if (n == 0) {
    throw DeviceError(DeviceError::Kind::precondition,
                      "requested byte count must be at least 1");
  }
}

}  // namespace

void validate(const ChipProfile& profile) {
  auto fail = [&](const std::string& what) {
    throw DeviceError(DeviceError::Kind::precondition,
                      "profile " + profile.name + ": " + what);
  };
  if (profile.max_request < 1) fail("max_request must be at least 1");
  if (profile.chunk_size < 1) fail("chunk_size must be at least 1");
  if (profile.base_latency_us < 0 || profile.per_byte_latency_us < 0 ||
      profile.per_chunk_latency_us < 0 || profile.reseed_penalty_us < 0) {
    fail("latency coefficients must be non-negative");
  }
}

ChipProfile make_profile(std::string_view name) {
  // max_request and chunk_size reproduce the per-vendor caps and refill
  // granularities observed on real chips; the latency coefficients are
  // synthetic anchors chosen so intel plateaus near 500 B/s and sinosun
  // peaks near 1/30 of infineon.
  if (name == "infineon") {
    return {"infineon", 1259, 1259, 20000.0, 60.0, 0.0, 30, 50000.0};
  }
  if (name == "intel") {
    return {"intel", 1226, 64, 80000.0, 1200.0, 48000.0, 0, 0.0};
  }
  if (name == "atmel") {
    return {"atmel", 768, 538, 15000.0, 120.0, 30000.0, 0, 0.0};
  }
  if (name == "sinosun") {
    return {"sinosun", 2048, 20, 200000.0, 1000.0, 25000.0, 0, 0.0};
  }
  std::string known;
  for (const auto& p : builtin_profile_names()) {
    known += known.empty() ? p : ", " + p;
  }
  throw DeviceError(DeviceError::Kind::unknown_backend,
                    "unknown profile \"" + std::string(name) +
                        "\" (valid names: " + known + ")");
}

const std::vector<std::string>& builtin_profile_names() {
  static const std::vector<std::string> names = {"infineon", "intel", "atmel",
                                                 "sinosun"};
  return names;
}

double model_duration_us(const ChipProfile& profile, std::uint32_t delivered) {
  const std::uint32_t chunks =
      (delivered + profile.chunk_size - 1) / profile.chunk_size;
  return profile.base_latency_us +
         profile.per_byte_latency_us * static_cast<double>(delivered) +
         profile.per_chunk_latency_us * static_cast<double>(chunks);
}

SimulatedChip::SimulatedChip(ChipProfile profile, std::uint64_t seed,
                             double bias_epsilon)
    : profile_(std::move(profile)), gen_(seed, bias_epsilon) {
  validate(profile_);
}

DrawResult SimulatedChip::get_random(std::uint32_t n) {
  require_positive(n);
  ++calls_;
  const std::uint32_t delivered = std::min(n, profile_.max_request);
  DrawResult result;
  result.bytes.resize(delivered);
  gen_.fill(result.bytes);
  result.duration_us = model_duration_us(profile_, delivered);
  if (profile_.reseed_period != 0 && calls_ % profile_.reseed_period == 0) {
    result.duration_us += profile_.reseed_penalty_us;
  }
  return result;
}

OsEntropyDevice::OsEntropyDevice() : name_("os") {
  source_.open("/dev/urandom", std::ios::binary);
  if (!source_) {
    throw DeviceError(DeviceError::Kind::io, "cannot open /dev/urandom");
  }
}

DrawResult OsEntropyDevice::get_random(std::uint32_t n) {
  require_positive(n);
  ++calls_;
  DrawResult result;
  result.bytes.resize(n);
  const auto start = Clock::now();
  source_.read(reinterpret_cast<char*>(result.bytes.data()), n);
  const auto end = Clock::now();
  if (source_.gcount() != static_cast<std::streamsize>(n)) {
    throw DeviceError(DeviceError::Kind::io, "short read from /dev/urandom");
  }
  result.duration_us = elapsed_us(start, end);
  return result;
}

FileReplayDevice::FileReplayDevice(std::filesystem::path path)
    : name_("file:" + path.string()), path_(std::move(path)) {
  source_.open(path_, std::ios::binary);
  if (!source_) {
    throw DeviceError(DeviceError::Kind::io,
                      "cannot open replay file " + path_.string());
  }
}

DrawResult FileReplayDevice::get_random(std::uint32_t n) {
  require_positive(n);
  ++calls_;
  DrawResult result;
  result.bytes.resize(n);
  const auto start = Clock::now();
  source_.read(reinterpret_cast<char*>(result.bytes.data()), n);
  const auto end = Clock::now();
  if (source_.gcount() != static_cast<std::streamsize>(n)) {
    throw DeviceError(DeviceError::Kind::source_exhausted,
                      "replay file " + path_.string() + " exhausted (" +
                          std::to_string(source_.gcount()) + " of " +
                          std::to_string(n) + " bytes left)");
  }
  result.duration_us = elapsed_us(start, end);
  return result;
}

GeneratorDevice::GeneratorDevice(std::uint64_t seed, double epsilon)
    : name_(epsilon == 0.0 ? "generator" : "biased"), gen_(seed, epsilon) {}

DrawResult GeneratorDevice::get_random(std::uint32_t n) {
  require_positive(n);
  ++calls_;
  DrawResult result;
  result.bytes.resize(n);
  const auto start = Clock::now();
  gen_.fill(result.bytes);
  const auto end = Clock::now();
  result.duration_us = elapsed_us(start, end);
  return result;
}

std::unique_ptr<Device> open_backend(const std::string& selector,
                                     std::uint64_t seed, double epsilon) {
  return open_backend(selector, seed, epsilon, std::nullopt);
}

std::unique_ptr<Device> open_backend(
    const std::string& selector, std::uint64_t seed, double epsilon,
    const std::optional<ChipProfile>& profile) {
  if (selector == "os") {
    return std::make_unique<OsEntropyDevice>();
  }
  if (selector.rfind("file:", 0) == 0) {
    return std::make_unique<FileReplayDevice>(selector.substr(5));
  }
  if (selector == "biased") {
    return std::make_unique<GeneratorDevice>(seed, epsilon);
  }
  if (profile) {
    return std::make_unique<SimulatedChip>(*profile, seed);
  }
  try {
    return std::make_unique<SimulatedChip>(make_profile(selector), seed);
  } catch (const DeviceError& e) {
    if (e.kind() != DeviceError::Kind::unknown_backend) throw;
    std::string known;
    for (const auto& p : builtin_profile_names()) {
      known += known.empty() ? p : ", " + p;
    }
    throw DeviceError(DeviceError::Kind::unknown_backend,
                      "unknown backend \"" + selector + "\" (valid: " + known +
                          ", os, file:<path>, biased)");
  }
}

std::vector<std::uint8_t> submit_command(Device& device,
                                         std::span<const std::uint8_t> raw) {
  GetRandomRequest request;
  try {
    request = decode_request(raw);
  } catch (const WireError&) {
    return encode_response(make_failure_response(kTpmFailCode));
  }
  try {
    DrawResult draw = device.get_random(request.bytes_requested);
    return encode_response(make_success_response(std::move(draw.bytes)));
  } catch (const DeviceError&) {
    return encode_response(make_failure_response(kTpmFailCode));
  }
}

}  // namespace trngbench
