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

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "nova/adapt.hpp"
#include "nova/hamiltonian_io.hpp"

namespace nova {

// ---------------------------------------------------------------------------
// Feedback-based quantum algorithm

struct FqaConfig {
  /// Unset selects fqa_lower_bound_delta_t.
  std::optional<double> delta_t;
  int max_layers = 200;
  int trotter_steps = 1;
  double energy_error_target = 0.0;
};

/// 1 / (4 ||H|| ||H1 - tr(H1)/d||^2), the analogue of the lower-bound gamma.
double fqa_lower_bound_delta_t(const Problem& problem, const PauliSum& h1);

/// beta = -i <[H1, H2]>.
double fqa_beta(const Eigen::VectorXcd& psi, const PauliKernel& h1, const PauliKernel& h2);

/// Layers e^{-i beta_n H1 dt} e^{-i H dt}, both first-order product formulas
/// in canonical term order; beta_n is measured before each layer.
RunTrace fqa_run(const Problem& problem, const PauliSum& h1, const PauliSum& h2,
                 const StateVector& initial, const FqaConfig& config);

// ---------------------------------------------------------------------------
// Randomized adaptive state preparation

struct RandomOptions {
  GammaStrategy gamma;
  StoppingRule stop;
  NoiseConfig noise;
  std::uint64_t seed = 0;
  /// Samples with |gradient| at or below this are rejected (and still paid for).
  double rejection_threshold = 1e-10;
  /// Consecutive rejections that end the run as stationary.
  int max_rejections = 2000;
};

/// One uniformly sampled pool operator per accepted step.
RunTrace random_pool_run(const Problem& problem, const OperatorPool& pool,
                         const StateVector& initial, const RandomOptions& options);

/// Each step uses C A C^dagger for a fresh uniformly random Clifford C.
RunTrace random_2design_run(const Problem& problem, const PoolOperator& fixed_op,
                            const StateVector& initial, const RandomOptions& options);

// ---------------------------------------------------------------------------
// Contracted Schrodinger equation

struct AcseConfig {
  enum class Ordering { kPoolOrder, kGradientDescending };

  Ordering ordering = Ordering::kPoolOrder;
  /// Unset: golden-section search on [0, epsilon_max].
  std::optional<double> epsilon;
  double epsilon_max = 2.0;
  /// Repeat the search at every iteration; each chosen value stays frozen.
  bool reoptimize_epsilon = true;
  int line_search_evaluations = 24;
  int max_iterations = 100;
  double gradient_tolerance = 1e-6;
  double energy_error_target = 0.0;
};

std::string to_string(AcseConfig::Ordering ordering);

/// <[A_k, H]> for each pool generator, computed from the commutator sums.
std::vector<Complex> acse_s_coefficients(const StateVector& state, const PauliSum& h,
                                         const OperatorPool& pool);

/// Each iteration appends prod_k e^{-i eps g_k A_k} in the configured order.
RunTrace acse_run(const Problem& problem, const OperatorPool& pool,
                  const StateVector& initial, const AcseConfig& config);

}  // namespace nova
