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
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nova/trace.hpp"

namespace nova {

/// Gaussian over/under-rotation added to circuit parameters.
struct RotationNoise {
  double sigma = 0.0;
};

/// Gaussian error added to each screened gradient.
struct GradientNoise {
  double sigma = 0.0;
};

struct NoiseConfig {
  RotationNoise rotation;
  GradientNoise gradient;

  bool active() const { return rotation.sigma > 0.0 || gradient.sigma > 0.0; }
};

/// theta_k + N(0, sigma^2), drawn in index order. sigma == 0 draws nothing.
Eigen::VectorXd perturb_parameters(const Eigen::VectorXd& params,
                                   const RotationNoise& noise, std::mt19937_64& rng);
double perturb_parameter(double value, const RotationNoise& noise, std::mt19937_64& rng);
std::vector<double> perturb_gradients(const std::vector<double>& grads,
                                      const GradientNoise& noise, std::mt19937_64& rng);

struct AggregateRow {
  int iteration;
  double mean;
  double median;
  double q25;
  double q75;
  /// Standard deviation across realizations.
  double stddev;
  /// Realizations still running at this iteration (others are carried forward).
  int n_alive;
};

struct EnsembleResult {
  std::vector<RunTrace> traces;
  std::vector<std::uint64_t> failed_seeds;
  std::vector<std::string> failure_messages;
  std::vector<AggregateRow> aggregate;
};

/// Energy-error statistics per iteration index; shorter traces are padded by
/// carrying their last record forward.
std::vector<AggregateRow> aggregate_by_iteration(const std::vector<RunTrace>& traces);

/// Runs `run(base_seed + i)` for i in [0, n) across `threads` workers
/// (0 = hardware concurrency). Failures are reported, not thrown.
EnsembleResult ensemble_run(const std::function<RunTrace(std::uint64_t)>& run,
                            int n_realizations, std::uint64_t base_seed,
                            unsigned threads = 0);

/// iteration,mean_energy_error,median,q25,q75,stddev,n_alive
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

}  // namespace nova
