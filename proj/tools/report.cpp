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

#include "report.hpp"

#include <cstdio>
#include <string>

namespace trngbench::report {

namespace {

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

std::string scc_text(const std::optional<double>& scc, const char* format) {
  return scc ? fmt(format, *scc) : std::string("undefined");
}

void render_level(std::ostream& out, const char* level,
                  const MetricSet& metrics) {
  const MetricLabel label = chi_square_label(metrics.chi_square_exceed_prob);
  out << "  " << level << " level:\n"
      << "    entropy             " << fmt("%.2f", metrics.entropy)
      << " bits per symbol\n"
      << "    chi-square          " << fmt("%.2f", metrics.chi_square_stat)
      << ", exceeded with p = "
      << fmt("%.4f", metrics.chi_square_exceed_prob) << " (~"
      << fmt("%.0f", nearest_bucket(metrics.chi_square_exceed_prob) * 100.0)
      << "%) [" << label_name(label) << "]\n"
      << "    arithmetic mean     " << fmt("%.4f", metrics.mean) << "\n"
      << "    monte-carlo pi      " << fmt("%.8f", metrics.mc_pi_estimate)
      << " (error " << fmt("%.2f", metrics.mc_pi_error_pct) << "%)\n"
      << "    serial correlation  "
      << scc_text(metrics.serial_correlation, "%.6f") << "\n";
}

void render_csv_level(std::ostream& out, std::string_view piece,
                      const char* level, const MetricSet& metrics) {
  const auto row = [&](const char* metric, const std::string& value,
                       std::string_view label) {
    out << piece << ',' << level << ',' << metric << ',' << value << ','
        << label << '\n';
  };
  row("entropy", fmt("%.6f", metrics.entropy), "-");
  row("chi_square", fmt("%.6f", metrics.chi_square_exceed_prob),
      label_name(chi_square_label(metrics.chi_square_exceed_prob)));
  row("mean", fmt("%.6f", metrics.mean), "-");
  row("monte_carlo_pi", fmt("%.6f", metrics.mc_pi_error_pct), "-");
  row("serial_correlation", scc_text(metrics.serial_correlation, "%.8f"),
      "-");
}

}  // namespace

void render_text(std::ostream& out, std::string_view title,
                 const QualityReport& report) {
  out << title << ": " << report.input_length << " bytes\n";
  render_level(out, "byte", report.byte_level);
  render_level(out, "bit", report.bit_level);
}

void csv_header(std::ostream& out) { out << "piece,level,metric,value,label\n"; }

void render_csv(std::ostream& out, std::string_view piece,
                const QualityReport& report) {
  render_csv_level(out, piece, "byte", report.byte_level);
  render_csv_level(out, piece, "bit", report.bit_level);
}

}  // namespace trngbench::report
