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

#include "hsc/trace_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hsc {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 7> kVectorFields = {
    "x1", "x2", "x2d", "u_ref", "u_cbf", "f_ref", "f"};

std::array<Vec*, 7> vector_fields(TraceSample& s) {
  return {&s.x1, &s.x2, &s.x2d, &s.u_ref, &s.u_cbf, &s.f_ref, &s.f};
}

std::array<const Vec*, 7> vector_fields(const TraceSample& s) {
  return {&s.x1, &s.x2, &s.x2d, &s.u_ref, &s.u_cbf, &s.f_ref, &s.f};
}

void put_double(std::string& out, double v) {
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::runtime_error("trace: bad number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

json vec_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vec json_vec(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw std::runtime_error(std::string("trace: missing array '") + key + "'");
  }
  const json& arr = j.at(key);
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

json sample_json(const TraceSample& s) {
  json j;
  j["t"] = s.t;
  const auto vecs = vector_fields(s);
  for (std::size_t i = 0; i < kVectorFields.size(); ++i) {
    j[kVectorFields[i]] = vec_json(*vecs[i]);
  }
  j["eps"] = s.eps;
  j["e"] = s.e;
  j["h"] = s.h;
  j["radius_sq"] = s.radius_sq;
  j["saturated"] = s.saturated;
  return j;
}

}  // namespace

TraceFormat parse_trace_format(const std::string& text) {
  if (text == "csv") return TraceFormat::kCsv;
  if (text == "jsonl" || text == "json-lines") return TraceFormat::kJsonLines;
  throw std::invalid_argument("unknown trace format '" + text + "'");
}

std::string csv_header(Eigen::Index dim) {
  std::string h = "t";
  for (const char* name : kVectorFields) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      h += ',';
      h += name;
      h += '_';
      h += std::to_string(i);
    }
  }
  h += ",eps,e,h,radius_sq,saturated";
  return h;
}

void write_trace(const Trace& trace, TraceFormat format, std::ostream& out) {
  if (format == TraceFormat::kJsonLines) {
    for (const TraceSample& s : trace) out << sample_json(s).dump() << '\n';
    return;
  }
  const Eigen::Index dim = trace.empty() ? 2 : trace.front().dim();
  out << csv_header(dim) << '\n';
  std::string row;
  for (const TraceSample& s : trace) {
    row.clear();
    put_double(row, s.t);
    for (const Vec* v : vector_fields(s)) {
      if (v->size() != dim) {
        throw std::runtime_error("trace: inconsistent sample dimension");
      }
      for (Eigen::Index i = 0; i < dim; ++i) {
        row += ',';
        put_double(row, (*v)[i]);
      }
    }
    for (double x : {s.eps, s.e, s.h, s.radius_sq}) {
      row += ',';
      put_double(row, x);
    }
    row += s.saturated ? ",1\n" : ",0\n";
    out << row;
  }
}

void export_trace(const Trace& trace, TraceFormat format,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  write_trace(trace, format, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string trace_to_string(const Trace& trace, TraceFormat format) {
  std::ostringstream out;
  write_trace(trace, format, out);
  return out.str();
}

Trace read_trace(std::istream& in, TraceFormat format) {
  Trace trace;
  std::string line;
  if (format == TraceFormat::kJsonLines) {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("trace: bad JSON line: ") +
                                 e.what());
      }
      TraceSample s;
      s.t = j.at("t").get<double>();
      auto vecs = vector_fields(s);
      for (std::size_t i = 0; i < kVectorFields.size(); ++i) {
        *vecs[i] = json_vec(j, kVectorFields[i]);
      }
      s.eps = j.at("eps").get<double>();
      s.e = j.at("e").get<double>();
      s.h = j.at("h").get<double>();
      s.radius_sq = j.at("radius_sq").get<double>();
      s.saturated = j.at("saturated").get<bool>();
      trace.push_back(std::move(s));
    }
    return trace;
  }

  if (!std::getline(in, line)) throw std::runtime_error("trace: missing header");
  const auto header = split(line, ',');
  // 1 + 7d + 5 columns
  if (header.size() < 13 || (header.size() - 6) % 7 != 0) {
    throw std::runtime_error("trace: unexpected CSV header width");
  }
  const auto dim = static_cast<Eigen::Index>((header.size() - 6) / 7);
  if (line != csv_header(dim)) {
    throw std::runtime_error("trace: CSV header does not match the schema");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != header.size()) {
      throw std::runtime_error("trace: row width differs from header");
    }
    TraceSample s;
    std::size_t c = 0;
    s.t = parse_double(cols[c++]);
    for (Vec* v : vector_fields(s)) {
      v->resize(dim);
      for (Eigen::Index i = 0; i < dim; ++i) (*v)[i] = parse_double(cols[c++]);
    }
    s.eps = parse_double(cols[c++]);
    s.e = parse_double(cols[c++]);
    s.h = parse_double(cols[c++]);
    s.radius_sq = parse_double(cols[c++]);
    const std::string_view sat = cols[c++];
    if (sat != "0" && sat != "1") {
      throw std::runtime_error("trace: saturated must be 0 or 1");
    }
    s.saturated = sat == "1";
    trace.push_back(std::move(s));
  }
  return trace;
}

Trace import_trace(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_trace(in, format);
}

Trace import_trace(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  const TraceFormat fmt = (ext == ".jsonl" || ext == ".ndjson")
                              ? TraceFormat::kJsonLines
                              : TraceFormat::kCsv;
  return import_trace(path, fmt);
}

std::string sample_to_json(const TraceSample& s) { return sample_json(s).dump(); }

}  // namespace hsc
