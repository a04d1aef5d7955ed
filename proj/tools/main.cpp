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

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "trngbench/bench.hpp"
#include "trngbench/config.hpp"
#include "trngbench/device.hpp"
#include "trngbench/quality.hpp"
#include "trngbench/wire.hpp"

namespace {

using namespace trngbench;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDeviceIo = 2;
constexpr int kExitAborted = 3;
constexpr int kExitQualityFail = 4;

std::atomic<bool> g_cancel{false};

void on_interrupt(int) { g_cancel.store(true); }

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

// One flat bag of option values shared by all subcommands; only the parsed
// subcommand reads from it.
struct Options {
  std::string config_file;
  std::string backend;
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  std::uint64_t total = 0;
  std::uint32_t request_size = 2048;
  std::string out;
  std::uint32_t min = 1;
  std::uint32_t max = 2048;
  std::uint32_t step = 1;
  std::uint32_t reps = 10;
  std::uint64_t pieces = 1;
  std::string format = "text";
  std::uint64_t progress_every = 100;
  std::string file;  // analyze input
  std::string hex;   // simulate input
};

// The CLI11 option handles of one subcommand, used to decide whether a flag
// was given explicitly (flags override config-file values override
// defaults).
struct OptionRefs {
  CLI::Option* backend = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* epsilon = nullptr;
  CLI::Option* total = nullptr;
  CLI::Option* request_size = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* min = nullptr;
  CLI::Option* max = nullptr;
  CLI::Option* step = nullptr;
  CLI::Option* reps = nullptr;
  CLI::Option* pieces = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* progress_every = nullptr;
};

template <typename T>
void overlay(const CLI::Option* flag, const std::optional<T>& from_config,
             T& value) {
  if (flag != nullptr && flag->count() == 0 && from_config) {
    value = *from_config;
  }
}

void overlay_config(Options& o, const OptionRefs& refs,
                    const RunOverrides& run) {
  overlay(refs.backend, run.backend, o.backend);
  overlay(refs.seed, run.seed, o.seed);
  overlay(refs.epsilon, run.epsilon, o.epsilon);
  overlay(refs.total, run.total, o.total);
  overlay(refs.request_size, run.request_size, o.request_size);
  overlay(refs.out, run.out, o.out);
  overlay(refs.min, run.min, o.min);
  overlay(refs.max, run.max, o.max);
  overlay(refs.step, run.step, o.step);
  overlay(refs.reps, run.reps, o.reps);
  overlay(refs.pieces, run.pieces, o.pieces);
  overlay(refs.format, run.format, o.format);
  overlay(refs.progress_every, run.progress_every, o.progress_every);
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

std::unique_ptr<Device> make_device(const Options& o, const AppConfig& cfg) {
  std::optional<ChipProfile> profile;
  if (const auto it = cfg.profiles.find(o.backend);
      it != cfg.profiles.end()) {
    ChipProfile p = make_profile(o.backend);
    apply(it->second, p);
    profile = std::move(p);
  }
  return open_backend(o.backend, o.seed, o.epsilon, profile);
}

int run_bench(const Options& o, const AppConfig& cfg) {
  if (o.backend.empty()) return usage_error("no backend selected");
  auto device = make_device(o, cfg);
  const std::vector<BenchRecord> records =
      sweep(*device, {o.min, o.max, o.step, o.reps});

  const BenchRecord* peak = &records.front();
  for (const BenchRecord& record : records) {
    if (record.throughput_bps > peak->throughput_bps) peak = &record;
  }

  if (!o.out.empty()) {
    std::ofstream csv(o.out, std::ios::trunc);
    if (!csv) {
      std::cerr << "error: cannot open " << o.out << " for writing\n";
      return kExitDeviceIo;
    }
    const std::size_t bytes = write_csv(records, csv);
    csv.flush();
    if (!csv) {
      std::cerr << "error: writing " << o.out << " failed\n";
      return kExitDeviceIo;
    }
    std::cout << "wrote " << o.out << ": " << records.size() << " records, "
              << bytes << " bytes\n";
  } else {
    write_csv(records, std::cout);
  }

  // With the CSV on stdout the summary moves to stderr to keep the data
  // stream clean.
  std::ostream& summary = o.out.empty() ? std::cerr : std::cout;
  summary << "peak throughput " << fmt("%.2f", peak->throughput_bps)
          << " B/s at request size " << peak->request_size << " (returned "
          << peak->returned_size << ")\n";
  return kExitOk;
}

int run_collect(const Options& o, const AppConfig& cfg) {
  if (o.backend.empty()) return usage_error("no backend selected");
  if (o.total < 1) return usage_error("--total must be at least 1");
  if (o.request_size < 1) {
    return usage_error("--request-size must be at least 1");
  }
  if (o.out.empty()) return usage_error("--out is required for collect");

  auto device = make_device(o, cfg);
  if (const auto cap = device->max_request();
      cap && *cap < o.request_size) {
    std::cerr << "warning: backend " << device->name() << " truncates "
              << o.request_size << "-byte requests to " << *cap
              << " bytes\n";
  }

  std::ofstream sink(o.out, std::ios::binary | std::ios::trunc);
  if (!sink) {
    std::cerr << "error: cannot open " << o.out << " for writing\n";
    return kExitDeviceIo;
  }

  std::signal(SIGINT, on_interrupt);
  const auto progress = [&](const CollectProgress& p) {
    std::fprintf(stderr, "progress: %llu/%llu bytes (%.1f%%), mean %.2f B/s\n",
                 static_cast<unsigned long long>(p.bytes_written),
                 static_cast<unsigned long long>(o.total),
                 100.0 * static_cast<double>(p.bytes_written) /
                     static_cast<double>(o.total),
                 p.mean_throughput_bps);
  };

  const CollectSummary summary =
      collect(*device, {o.total, o.request_size, o.progress_every}, sink,
              progress, g_cancel);
  sink.flush();
  if (!sink) {
    std::cerr << "error: writing " << o.out << " failed\n";
    return kExitDeviceIo;
  }

  const bool completed = summary.status == CollectStatus::completed;
  std::cout << "collected " << summary.bytes_written << " bytes to " << o.out
            << " (" << (completed ? "completed" : "aborted") << "), mean "
            << fmt("%.2f", summary.mean_throughput_bps) << " B/s\n";
  return completed ? kExitOk : kExitAborted;
}

int run_analyze(const Options& o) {
  if (o.pieces < 1) return usage_error("--pieces must be at least 1");
  if (o.format != "text" && o.format != "csv") {
    return usage_error("--format must be text or csv");
  }

  const QualityReport whole = analyze_file(o.file);
  std::vector<QualityReport> pieces;
  if (o.pieces > 1) {
    pieces = split_analyze(o.file, static_cast<std::size_t>(o.pieces));
  }

  bool failed = has_failure(whole);
  for (const QualityReport& piece : pieces) {
    failed = failed || has_failure(piece);
  }

  if (o.format == "csv") {
    report::csv_header(std::cout);
    report::render_csv(std::cout, "whole", whole);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      report::render_csv(std::cout, std::to_string(i + 1), pieces[i]);
    }
  } else {
    report::render_text(std::cout, "whole file", whole);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      std::cout << "\n";
      report::render_text(std::cout, "piece " + std::to_string(i + 1),
                          pieces[i]);
    }
  }
  return failed ? kExitQualityFail : kExitOk;
}

bool parse_hex(std::string_view text, std::vector<std::uint8_t>& out) {
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  int hi = -1;
  for (const char c : text) {
    if (c == ' ' || c == '\t' || c == ':') continue;
    const int v = nibble(c);
    if (v < 0) return false;
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<std::uint8_t>(hi << 4 | v));
      hi = -1;
    }
  }
  return hi < 0;
}

int run_simulate(const Options& o, const AppConfig& cfg) {
  if (o.backend.empty()) return usage_error("no backend selected");
  std::vector<std::uint8_t> raw;
  if (!parse_hex(o.hex, raw)) {
    return usage_error("invalid hex command (expected an even number of hex "
                       "digits, separators allowed)");
  }

  auto device = make_device(o, cfg);
  const std::vector<std::uint8_t> encoded = submit_command(*device, raw);
  const GetRandomResponse response = decode_response(encoded);

  std::string payload;
  payload.reserve(2 * response.random_bytes.size());
  for (const std::uint8_t b : response.random_bytes) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", b);
    payload += buf;
  }

  std::printf("tag:               0x%04X\n", response.tag);
  std::printf("param_size:        %u\n", response.param_size);
  std::printf("return_code:       %u\n", response.return_code);
  std::printf("random_bytes_size: %u\n", response.random_bytes_size);
  std::printf("payload:           %s\n",
              payload.empty() ? "(empty)" : payload.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TRNG benchmarking and analysis over the TPM GetRandom "
               "command"};
  app.require_subcommand(1);
  Options o;
  OptionRefs bench_refs, collect_refs, analyze_refs, simulate_refs;

  const auto add_common = [&](CLI::App* cmd, OptionRefs& refs) {
    cmd->add_option("--config", o.config_file,
                    "INI file with [run] defaults and profile overrides");
    refs.backend = cmd->add_option(
        "--backend", o.backend,
        "infineon|intel|atmel|sinosun, os, file:<path>, or biased");
    refs.seed = cmd->add_option("--seed", o.seed,
                                "Generator seed for simulated backends");
    refs.epsilon = cmd->add_option(
        "--epsilon", o.epsilon,
        "Bias strength for the biased backend (P(v) ~ 1 + epsilon*v)");
  };

  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Sweep request sizes and record mean call latency as CSV");
  add_common(bench_cmd, bench_refs);
  bench_refs.min =
      bench_cmd->add_option("--min", o.min, "Smallest request size");
  bench_refs.max =
      bench_cmd->add_option("--max", o.max, "Largest request size");
  bench_refs.step = bench_cmd->add_option("--step", o.step, "Size increment");
  bench_refs.reps =
      bench_cmd->add_option("--reps", o.reps, "Calls averaged per size");
  bench_refs.out = bench_cmd->add_option(
      "--out", o.out, "CSV destination (default: standard output)");

  CLI::App* collect_cmd = app.add_subcommand(
      "collect", "Stream random bytes from a backend into a file");
  add_common(collect_cmd, collect_refs);
  collect_refs.total =
      collect_cmd->add_option("--total", o.total, "Bytes to collect");
  collect_refs.request_size = collect_cmd->add_option(
      "--request-size", o.request_size, "Bytes asked of the device per call");
  collect_refs.out =
      collect_cmd->add_option("--out", o.out, "Output file (raw bytes)");
  collect_refs.progress_every = collect_cmd->add_option(
      "--progress-every", o.progress_every, "Calls between progress lines");

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Run the randomness metric battery over a file");
  analyze_cmd->add_option("--config", o.config_file,
                          "INI file with [run] defaults");
  analyze_cmd->add_option("file", o.file, "File to analyze")->required();
  analyze_refs.pieces = analyze_cmd->add_option(
      "--pieces", o.pieces, "Also analyze N equal contiguous pieces");
  analyze_refs.format = analyze_cmd
                            ->add_option("--format", o.format,
                                         "Report format: text or csv")
                            ->check(CLI::IsMember({"text", "csv"}));

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Feed a raw hex command through the wire codec and a "
                  "backend");
  add_common(simulate_cmd, simulate_refs);
  simulate_cmd->add_option("hex", o.hex, "Encoded command, hex digits")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    AppConfig cfg;
    if (!o.config_file.empty()) cfg = load_config(o.config_file);

    if (bench_cmd->parsed()) {
      overlay_config(o, bench_refs, cfg.run);
      return run_bench(o, cfg);
    }
    if (collect_cmd->parsed()) {
      overlay_config(o, collect_refs, cfg.run);
      return run_collect(o, cfg);
    }
    if (analyze_cmd->parsed()) {
      overlay_config(o, analyze_refs, cfg.run);
      return run_analyze(o);
    }
    overlay_config(o, simulate_refs, cfg.run);
    return run_simulate(o, cfg);
  } catch (const ConfigError& e) {
    return usage_error(e.what());
  } catch (const QualityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == QualityError::Kind::io ? kExitDeviceIo : kExitUsage;
  } catch (const SweepError& e) {
    std::cerr << "error: " << e.what() << " (" << e.completed().size()
              << " sizes completed)\n";
    return kExitDeviceIo;
  } catch (const CollectIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDeviceIo;
  } catch (const DeviceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == DeviceError::Kind::unknown_backend ||
                   e.kind() == DeviceError::Kind::precondition
               ? kExitUsage
               : kExitDeviceIo;
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDeviceIo;
  }
}
