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

#include "trngbench/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace trngbench {

namespace {

std::string_view trim(std::string_view text) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::uint64_t parse_unsigned(std::string_view value, std::size_t line,
                             std::uint64_t max) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || out > max) {
    throw ConfigError(line, "expected an unsigned integer, got \"" +
                                std::string(value) + "\"");
  }
  return out;
}

double parse_double(std::string_view value, std::size_t line) {
  // std::from_chars for doubles is incomplete on some standard libraries;
  // strtod on a bounded copy is portable.
  const std::string copy(value);
  char* end = nullptr;
  const double out = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw ConfigError(line, "expected a number, got \"" + copy + "\"");
  }
  return out;
}

void set_profile_key(ProfileOverride& profile, std::string_view key,
                     std::string_view value, std::size_t line) {
  constexpr auto u32_max = std::numeric_limits<std::uint32_t>::max();
  if (key == "max_request") {
    profile.max_request =
        static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
  } else if (key == "chunk_size") {
    profile.chunk_size =
        static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
  } else if (key == "base_latency_us") {
    profile.base_latency_us = parse_double(value, line);
  } else if (key == "per_byte_latency_us") {
    profile.per_byte_latency_us = parse_double(value, line);
  } else if (key == "per_chunk_latency_us") {
    profile.per_chunk_latency_us = parse_double(value, line);
  } else if (key == "reseed_period") {
    if (value == "never") {
      profile.reseed_period = 0;
    } else {
      profile.reseed_period =
          static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
    }
  } else if (key == "reseed_penalty_us") {
    profile.reseed_penalty_us = parse_double(value, line);
  } else {
    throw ConfigError(line, "unknown profile key \"" + std::string(key) +
                                "\"");
  }
}

void set_run_key(RunOverrides& run, std::string_view key,
                 std::string_view value, std::size_t line) {
  constexpr auto u32_max = std::numeric_limits<std::uint32_t>::max();
  constexpr auto u64_max = std::numeric_limits<std::uint64_t>::max();
  if (key == "backend") {
    run.backend = std::string(value);
  } else if (key == "seed") {
    run.seed = parse_unsigned(value, line, u64_max);
  } else if (key == "total") {
    run.total = parse_unsigned(value, line, u64_max);
  } else if (key == "request-size") {
    run.request_size =
        static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
  } else if (key == "out") {
    run.out = std::string(value);
  } else if (key == "min") {
    run.min = static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
  } else if (key == "max") {
    run.max = static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
  } else if (key == "step") {
    run.step =
        static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
  } else if (key == "reps") {
    run.reps =
        static_cast<std::uint32_t>(parse_unsigned(value, line, u32_max));
  } else if (key == "pieces") {
    run.pieces = parse_unsigned(value, line, u64_max);
  } else if (key == "format") {
    run.format = std::string(value);
  } else if (key == "epsilon") {
    run.epsilon = parse_double(value, line);
  } else if (key == "progress-every") {
    run.progress_every = parse_unsigned(value, line, u64_max);
  } else {
    throw ConfigError(line, "unknown run key \"" + std::string(key) + "\"");
  }
}

}  // namespace

AppConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open config file " + file.string());
  }

  AppConfig config;
  enum class Section { none, run, profile };
  Section section = Section::none;
  ProfileOverride* profile = nullptr;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;");
        hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(line_no, "unterminated section header");
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name == "run") {
        section = Section::run;
      } else if (std::find(builtin_profile_names().begin(),
                           builtin_profile_names().end(),
                           name) != builtin_profile_names().end()) {
        section = Section::profile;
        profile = &config.profiles[name];
      } else {
        throw ConfigError(line_no, "unknown section \"" + name +
                                       "\" (expected run or a profile name)");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(line_no, "empty key");
    }

    switch (section) {
      case Section::none:
        throw ConfigError(line_no, "entry before any [section] header");
      case Section::run:
        set_run_key(config.run, key, value, line_no);
        break;
      case Section::profile:
        set_profile_key(*profile, key, value, line_no);
        break;
    }
  }
  return config;
}

void apply(const ProfileOverride& override_values, ChipProfile& profile) {
  if (override_values.max_request) {
    profile.max_request = *override_values.max_request;
  }
  if (override_values.chunk_size) {
    profile.chunk_size = *override_values.chunk_size;
  }
  if (override_values.base_latency_us) {
    profile.base_latency_us = *override_values.base_latency_us;
  }
  if (override_values.per_byte_latency_us) {
    profile.per_byte_latency_us = *override_values.per_byte_latency_us;
  }
  if (override_values.per_chunk_latency_us) {
    profile.per_chunk_latency_us = *override_values.per_chunk_latency_us;
  }
  if (override_values.reseed_period) {
    profile.reseed_period = *override_values.reseed_period;
  }
  if (override_values.reseed_penalty_us) {
    profile.reseed_penalty_us = *override_values.reseed_penalty_us;
  }
  validate(profile);
}

}  // namespace trngbench
