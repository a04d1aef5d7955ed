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

#ifndef TRNGBENCH_TOOLS_REPORT_HPP_
#define TRNGBENCH_TOOLS_REPORT_HPP_

#include <ostream>
#include <string_view>

#include "trngbench/quality.hpp"

namespace trngbench::report {

// Two-section (byte level / bit level) five-metric block.  Chi-square rows
// carry the exceedance probability, its nearest conventional bucket, and an
// ok/suspect/fail label; the other metrics are unlabeled.
void render_text(std::ostream& out, std::string_view title,
                 const QualityReport& report);

// Machine format: header `piece,level,metric,value,label`, then one row per
// (level, metric) with `piece` naming the segment ("whole" or its index).
void csv_header(std::ostream& out);
void render_csv(std::ostream& out, std::string_view piece,
                const QualityReport& report);

}  // namespace trngbench::report

#endif  // TRNGBENCH_TOOLS_REPORT_HPP_
