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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nova/adapt.hpp"
#include "nova/baselines.hpp"
#include "nova/hamiltonian_io.hpp"
#include "nova/vqe.hpp"

namespace nova {

/// Schema violation in an experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { kNova, kAdaptVqe, kHybrid, kFqa, kRandomPool, kRandom2Design, kAcse };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view tag);

/// Fully resolved experiment; every field has a value after parse_config.
struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kNova;
  std::filesystem::path hamiltonian;
  std::string pool = "spin_adapted";
  std::string initial_state = "hartree_fock";
  std::uint64_t seed = 1;
  GammaStrategy gamma = GammaStrategy::second_derivative();
  StoppingRule stop;
  NoiseConfig noise;
  BfgsOptions bfgs;
  bool recycle_hessian = true;
  bool count_gradient_per_parameter = false;
  int switch_iteration = 5;
  FqaConfig fqa;
  AcseConfig acse;
  double rejection_threshold = 1e-10;
  int max_rejections = 2000;
  /// Empty selects the first spin-adapted double.
  std::string fixed_operator;
  int realizations = 1;
  unsigned threads = 0;
  std::filesystem::path output_dir;
  std::string name;
};

/// Bundled H4 (1.5 Angstrom) Hamiltonian.
std::filesystem::path default_hamiltonian_path();

/// Validates and fills defaults; unknown keys are rejected. The reserved
/// `_echo` key written by run_experiment is accepted and ignored.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Resolved form; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& config);

/// Parsed Hamiltonian, problem constants, and pools shared across runs.
class ExperimentContext {
 public:
  explicit ExperimentContext(const std::filesystem::path& hamiltonian);

  const HamiltonianFile& file() const { return file_; }
  const Problem& problem() const { return *problem_; }
  /// "spin_adapted" or "qubit"; built on first use.
  const OperatorPool& pool(const std::string& kind);
  StateVector hartree_fock() const;

 private:
  HamiltonianFile file_;
  std::unique_ptr<Problem> problem_;
  std::mutex mutex_;
  std::map<std::string, std::unique_ptr<OperatorPool>> pools_;
};

/// One realization of `config` with the given seed.
RunTrace run_single(const ExperimentConfig& config, ExperimentContext& context,
                    std::uint64_t seed);

struct RunSummary {
  std::string name;
  double final_energy_error = 0.0;
  int n_ops = 0;
  long total_fevals = 0;
  bool chemical_accuracy = false;
  std::string status;
  double wall_seconds = 0.0;
  int realizations = 1;
  int failed = 0;
  std::vector<std::filesystem::path> files;

  std::string line() const;
};

/// Runs the configured experiment (an ensemble when realizations > 1) and
/// writes `<name>.csv` (aggregate for ensembles, plus per-seed traces) and the
/// config echo `<name>.json`.
RunSummary run_experiment(const ExperimentConfig& config, ExperimentContext& context);
RunSummary run_experiment(const ExperimentConfig& config);

struct FigureOptions {
  std::filesystem::path hamiltonian = default_hamiltonian_path();
  /// Needed only by fig2.
  std::optional<std::filesystem::path> stretched_hamiltonian;
  int realizations = 100;
  unsigned threads = 0;
};

extern const std::vector<std::string> kFigureIds;

/// Curve configurations of a figure, without running them.
std::vector<ExperimentConfig> figure_configs(const std::string& figure_id,
                                             const std::filesystem::path& output_dir,
                                             const FigureOptions& options);

/// Runs every curve of the figure and writes a manifest.json next to them.
/// Returns an empty list (and a notice in `skipped`) when inputs are missing.
std::vector<RunSummary> figure_series(const std::string& figure_id,
                                      const std::filesystem::path& output_dir,
                                      const FigureOptions& options,
                                      std::string* skipped = nullptr);

}  // namespace nova
