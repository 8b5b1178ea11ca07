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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nova {

/// Measurement budget: one unit per energy or single gradient estimate.
class FevalCounter {
 public:
  void add(long n = 1) { count_ += n; }
  long count() const { return count_; }

 private:
  long count_ = 0;
};

enum class TerminalStatus {
  kMaxOperators,
  kGradientNorm,
  kEnergyTarget,
  kStationary,
  kMaxIterations,
  kMaxFevals,
};

std::string to_string(TerminalStatus status);

/// One row of a trace. Row 0 is the initial state and costs nothing.
struct IterationRecord {
  int iter = 0;
  std::string label;
  double gradient = 0.0;
  /// eta (NoVa), theta of the new parameter (ADAPT-VQE), beta (FQA), or
  /// epsilon (ACSE).
  double eta = 0.0;
  double energy = 0.0;
  double energy_error = 0.0;
  long fevals = 0;
  /// Exponentials applied so far.
  int n_ops = 0;
  std::string phase;
};

struct RunTrace {
  std::string algorithm;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  std::vector<IterationRecord> records;
  TerminalStatus status = TerminalStatus::kMaxOperators;
  /// Lower-bound steps that missed the guaranteed energy drop.
  int descent_violations = 0;
  /// Smallest (drop - guaranteed drop) over lower-bound steps.
  double min_descent_margin = 0.0;
  int fallback_steps = 0;
  /// Includes measurements after the last row (e.g. a terminal screening).
  long total_fevals = 0;
  std::vector<std::string> notes;

  const IterationRecord& last() const { return records.back(); }
  /// First row with energy_error <= threshold, or nullptr.
  const IterationRecord* first_below(double threshold) const;

  void write_csv(std::ostream& out) const;
  nlohmann::json metadata() const;
};

inline const char* kTraceCsvHeader =
    "iter,label,gradient,eta,energy,energy_error,fevals,n_ops,phase";

/// Shortest round-trip decimal form.
std::string format_double(double v);

std::vector<IterationRecord> read_trace_csv(std::istream& in);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace nova
