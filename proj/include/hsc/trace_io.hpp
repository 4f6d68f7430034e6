// Copyright 2026 The Haptic Shared Control Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Trace serialization.
//
// CSV: one header row, then one row per sample. Column order is fixed:
//   t, x1_0..x1_{d-1}, x2_*, x2d_*, u_ref_*, u_cbf_*, f_ref_*, f_*,
//   eps, e, h, radius_sq, saturated
// Floats use 17 significant digits, so a re-import is bit-exact. An empty
// trace has a header only; its dimension defaults to 2.
//
// JSON lines: one object per sample, keys equal to the field names above
// with vector fields as arrays.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hsc/sim.hpp"

namespace hsc {

enum class TraceFormat { kCsv, kJsonLines };

TraceFormat parse_trace_format(const std::string& text);

std::string csv_header(Eigen::Index dim);

void write_trace(const Trace& trace, TraceFormat format, std::ostream& out);
void export_trace(const Trace& trace, TraceFormat format,
                  const std::filesystem::path& path);
std::string trace_to_string(const Trace& trace, TraceFormat format);

/// Throws std::runtime_error on malformed input.
Trace read_trace(std::istream& in, TraceFormat format);
Trace import_trace(const std::filesystem::path& path, TraceFormat format);
/// Picks the format from the extension (.jsonl/.ndjson -> JSON lines).
Trace import_trace(const std::filesystem::path& path);

/// JSON object for one sample (also the body of a telemetry frame).
std::string sample_to_json(const TraceSample& s);

}  // namespace hsc
