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

#ifndef TRNGBENCH_CONFIG_HPP_
#define TRNGBENCH_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "trngbench/device.hpp"

namespace trngbench {

// Per-profile overrides; keys in the file mirror the ChipProfile field
// names.  reseed_period additionally accepts the word "never" (stored as 0).
struct ProfileOverride {
  std::optional<std::uint32_t> max_request;
  std::optional<std::uint32_t> chunk_size;
  std::optional<double> base_latency_us;
  std::optional<double> per_byte_latency_us;
  std::optional<double> per_chunk_latency_us;
  std::optional<std::uint32_t> reseed_period;
  std::optional<double> reseed_penalty_us;
};

// [run] section values; keys are the command-line flag names without the
// leading dashes.  Flags override these, these override built-in defaults.
struct RunOverrides {
  std::optional<std::string> backend;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> total;
  std::optional<std::uint32_t> request_size;
  std::optional<std::string> out;
  std::optional<std::uint32_t> min;
  std::optional<std::uint32_t> max;
  std::optional<std::uint32_t> step;
  std::optional<std::uint32_t> reps;
  std::optional<std::uint64_t> pieces;
  std::optional<std::string> format;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> progress_every;
};

struct AppConfig {
  RunOverrides run;
  std::map<std::string, ProfileOverride> profiles;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message)
      : std::runtime_error("config line " + std::to_string(line) + ": " +
                           message),
        line_(line) {}

  explicit ConfigError(const std::string& message)
      : std::runtime_error(message), line_(0) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses an INI-style file: `[run]` for run settings, `[<profile name>]`
// for chip profile overrides, `key = value` entries, `#`/`;` comments.
// Unknown sections or keys are errors.
AppConfig load_config(const std::filesystem::path& file);

// Applies the set fields of an override onto a profile and re-validates it.
void apply(const ProfileOverride& override_values, ChipProfile& profile);

}  // namespace trngbench

#endif  // TRNGBENCH_CONFIG_HPP_
