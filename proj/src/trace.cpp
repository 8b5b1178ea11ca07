// Copyright 2026 The NoVa-ADAPT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nova/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nova {

std::string to_string(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::kMaxOperators: return "max_operators";
    case TerminalStatus::kGradientNorm: return "gradient_norm";
    case TerminalStatus::kEnergyTarget: return "energy_target";
    case TerminalStatus::kStationary: return "stationary";
    case TerminalStatus::kMaxIterations: return "max_iterations";
    case TerminalStatus::kMaxFevals: return "max_fevals";
  }
  return "unknown";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const IterationRecord* RunTrace::first_below(double threshold) const {
  for (const auto& r : records)
    if (r.energy_error <= threshold) return &r;
  return nullptr;
}

namespace {

// RFC 4180 quoting for cells holding separators or quotes.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("read_trace_csv: unterminated quote");
  return cells;
}

}  // namespace

void RunTrace::write_csv(std::ostream& out) const {
  out << kTraceCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.iter << ',' << csv_cell(r.label) << ',' << format_double(r.gradient) << ','
        << format_double(r.eta) << ',' << format_double(r.energy) << ','
        << format_double(r.energy_error) << ',' << r.fevals << ',' << r.n_ops << ','
        << csv_cell(r.phase) << '\n';
  }
}

nlohmann::json RunTrace::metadata() const {
  nlohmann::json j;
  j["algorithm"] = algorithm;
  j["seed"] = seed;
  j["status"] = to_string(status);
  j["iterations"] = records.empty() ? 0 : records.back().iter;
  if (!records.empty()) {
    j["final_energy"] = records.back().energy;
    j["final_energy_error"] = records.back().energy_error;
    j["n_ops"] = records.back().n_ops;
  }
  j["total_fevals"] = total_fevals;
  j["descent_violations"] = descent_violations;
  j["fallback_steps"] = fallback_steps;
  j["notes"] = notes;
  return j;
}

namespace {

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("read_trace_csv: bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw std::runtime_error("read_trace_csv: missing or unexpected header");
  }
  std::vector<IterationRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw std::runtime_error("read_trace_csv: expected 9 fields");
    IterationRecord r;
    r.iter = std::stoi(f[0]);
    r.label = f[1];
    r.gradient = parse_double(f[2]);
    r.eta = parse_double(f[3]);
    r.energy = parse_double(f[4]);
    r.energy_error = parse_double(f[5]);
    r.fevals = std::stol(f[6]);
    r.n_ops = std::stoi(f[7]);
    r.phase = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace nova
