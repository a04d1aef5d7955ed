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

#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "trngbench/device.hpp"

namespace trngbench {
namespace {

std::filesystem::path write_config(const std::string& name,
                                   const std::string& text) {
  const std::filesystem::path path = testing::TempDir() + name;
  std::ofstream out(path, std::ios::trunc);
  out << text;
  return path;
}

TEST(ConfigTest, ParsesEveryRunKey) {
  const auto path = write_config("full_run.ini",
                                 "[run]\n"
                                 "backend = sinosun\n"
                                 "seed = 42\n"
                                 "total = 10485760\n"
                                 "request-size = 2048\n"
                                 "out = capture.bin\n"
                                 "min = 16\n"
                                 "max = 512\n"
                                 "step = 16\n"
                                 "reps = 5\n"
                                 "pieces = 4\n"
                                 "format = csv\n"
                                 "epsilon = 0.25\n"
                                 "progress-every = 50\n");
  const AppConfig config = load_config(path);
  EXPECT_EQ(config.run.backend, "sinosun");
  EXPECT_EQ(config.run.seed, 42u);
  EXPECT_EQ(config.run.total, 10485760u);
  EXPECT_EQ(config.run.request_size, 2048u);
  EXPECT_EQ(config.run.out, "capture.bin");
  EXPECT_EQ(config.run.min, 16u);
  EXPECT_EQ(config.run.max, 512u);
  EXPECT_EQ(config.run.step, 16u);
  EXPECT_EQ(config.run.reps, 5u);
  EXPECT_EQ(config.run.pieces, 4u);
  EXPECT_EQ(config.run.format, "csv");
  EXPECT_EQ(config.run.epsilon, 0.25);
  EXPECT_EQ(config.run.progress_every, 50u);
  EXPECT_TRUE(config.profiles.empty());
}

TEST(ConfigTest, ParsesProfileOverrides) {
  const auto path = write_config("profiles.ini",
                                 "[sinosun]\n"
                                 "max_request = 1024\n"
                                 "chunk_size = 32\n"
                                 "base_latency_us = 1000\n"
                                 "per_byte_latency_us = 10.5\n"
                                 "per_chunk_latency_us = 200\n"
                                 "reseed_period = 7\n"
                                 "reseed_penalty_us = 999\n"
                                 "\n"
                                 "[infineon]\n"
                                 "reseed_period = never\n");
  const AppConfig config = load_config(path);
  ASSERT_EQ(config.profiles.size(), 2u);

  const ProfileOverride& sinosun = config.profiles.at("sinosun");
  EXPECT_EQ(sinosun.max_request, 1024u);
  EXPECT_EQ(sinosun.chunk_size, 32u);
  EXPECT_EQ(sinosun.base_latency_us, 1000.0);
  EXPECT_EQ(sinosun.per_byte_latency_us, 10.5);
  EXPECT_EQ(sinosun.per_chunk_latency_us, 200.0);
  EXPECT_EQ(sinosun.reseed_period, 7u);
  EXPECT_EQ(sinosun.reseed_penalty_us, 999.0);

  const ProfileOverride& infineon = config.profiles.at("infineon");
  EXPECT_EQ(infineon.reseed_period, 0u);  // "never" disables the stall
  EXPECT_FALSE(infineon.max_request.has_value());
}

TEST(ConfigTest, ToleratesCommentsAndWhitespace) {
  const auto path = write_config("commented.ini",
                                 "# leading comment\n"
                                 "\n"
                                 "  [run]  \n"
                                 "  seed=7   ; trailing comment\n"
                                 "\tbackend\t=\tintel\t# another\n"
                                 "; whole-line comment\n");
  const AppConfig config = load_config(path);
  EXPECT_EQ(config.run.seed, 7u);
  EXPECT_EQ(config.run.backend, "intel");
}

TEST(ConfigTest, LaterEntriesOverrideEarlierOnes) {
  const auto path = write_config("repeated.ini",
                                 "[run]\n"
                                 "seed = 1\n"
                                 "seed = 2\n");
  EXPECT_EQ(load_config(path).run.seed, 2u);
}

TEST(ConfigTest, EmptyFileYieldsEmptyConfig) {
  const auto path = write_config("empty.ini", "");
  const AppConfig config = load_config(path);
  EXPECT_FALSE(config.run.backend.has_value());
  EXPECT_TRUE(config.profiles.empty());
}

TEST(ConfigTest, RejectsUnknownSection) {
  const auto path = write_config("bad_section.ini",
                                 "[run]\n"
                                 "seed = 1\n"
                                 "[turbo]\n");
  try {
    load_config(path);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("config line 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("turbo"), std::string::npos);
  }
}

TEST(ConfigTest, RejectsUnknownKeys) {
  const auto bad_run = write_config("bad_run_key.ini",
                                    "[run]\n"
                                    "warp = 9\n");
  try {
    load_config(bad_run);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("warp"), std::string::npos);
  }

  const auto bad_profile = write_config("bad_profile_key.ini",
                                        "[intel]\n"
                                        "spin_up_ms = 3\n");
  EXPECT_THROW(load_config(bad_profile), ConfigError);
}

TEST(ConfigTest, RejectsMalformedNumbers) {
  const auto path = write_config("bad_number.ini",
                                 "[run]\n"
                                 "seed = banana\n");
  try {
    load_config(path);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("banana"), std::string::npos);
  }
}

TEST(ConfigTest, RejectsEntryBeforeAnySection) {
  const auto path = write_config("stray_entry.ini", "seed = 1\n");
  try {
    load_config(path);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ConfigTest, RejectsUnterminatedHeaderAndBareText) {
  EXPECT_THROW(load_config(write_config("open_header.ini", "[run\n")),
               ConfigError);
  EXPECT_THROW(
      load_config(write_config("no_equals.ini", "[run]\njust words\n")),
      ConfigError);
}

TEST(ConfigTest, MissingFileThrowsWithoutALineNumber) {
  try {
    load_config("/nonexistent/trngbench/settings.ini");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 0u);
    EXPECT_NE(std::string(e.what()).find("cannot open"), std::string::npos);
  }
}

TEST(ConfigApplyTest, MergesOnlyTheSetFields) {
  ProfileOverride override_values;
  override_values.base_latency_us = 1000.0;
  override_values.reseed_period = 0;

  ChipProfile profile = make_profile("infineon");
  apply(override_values, profile);
  EXPECT_EQ(profile.base_latency_us, 1000.0);
  EXPECT_EQ(profile.reseed_period, 0u);
  // Untouched fields keep their built-in values.
  EXPECT_EQ(profile.max_request, 1259u);
  EXPECT_EQ(profile.per_byte_latency_us, 60.0);
}

TEST(ConfigApplyTest, RevalidatesTheMergedProfile) {
  ProfileOverride override_values;
  override_values.max_request = 0;
  ChipProfile profile = make_profile("intel");
  EXPECT_THROW(apply(override_values, profile), DeviceError);
}

}  // namespace
}  // namespace trngbench
