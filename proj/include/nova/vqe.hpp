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

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nova/adapt.hpp"

namespace nova {

/// prod_k e^{i theta_k A_k} applied to the reference, k = 0 first.
struct Ansatz {
  std::vector<std::size_t> operators;
  Eigen::VectorXd parameters;
  StateVector reference;

  explicit Ansatz(StateVector ref) : reference(std::move(ref)) {}
  std::size_t size() const { return operators.size(); }
};

StateVector ansatz_state(const Ansatz& ansatz, const OperatorPool& pool);

struct EnergyGradient {
  double energy;
  Eigen::VectorXd gradient;
};

/// Energy and all partial derivatives from one forward and one backward
/// sweep. Costs 2 fevals, or 1 + size() when `per_parameter` is set.
EnergyGradient ansatz_energy_and_gradient(const Ansatz& ansatz, const OperatorPool& pool,
                                          const Problem& problem, FevalCounter& counter,
                                          bool per_parameter = false);

struct BfgsOptions {
  double gradient_tolerance = 1e-6;
  int max_iterations = 1000;
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 30;
};

enum class BfgsStatus { kConverged, kMaxIterations, kLineSearchFailure };

/// Inverse-Hessian estimate carried between ADAPT iterations.
struct OptimizerState {
  Eigen::MatrixXd inverse_hessian = Eigen::MatrixXd(0, 0);
};

/// Previous estimate as the leading block plus an identity row and column.
OptimizerState recycle_hessian(const OptimizerState& previous, Eigen::Index new_dimension);

using Objective = std::function<std::pair<double, Eigen::VectorXd>(const Eigen::VectorXd&)>;

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd inverse_hessian;
  int iterations = 0;
  int evaluations = 0;
  BfgsStatus status = BfgsStatus::kConverged;
};

/// Dense BFGS with a strong-Wolfe line search; stops at ||g||_inf < tolerance.
BfgsResult bfgs_minimize(const Objective& f, Eigen::VectorXd x0,
                         Eigen::MatrixXd inverse_hessian, const BfgsOptions& options = {});

/// Minimizes over all ansatz parameters in place, updating `state`.
BfgsResult bfgs_minimize(Ansatz& ansatz, const OperatorPool& pool, const Problem& problem,
                         OptimizerState& state, FevalCounter& counter,
                         const BfgsOptions& options = {}, bool per_parameter = false);

struct VqeOptions {
  StoppingRule stop;
  NoiseConfig noise;
  std::uint64_t seed = 0;
  BfgsOptions bfgs;
  bool recycle_hessian = true;
  bool count_gradient_per_parameter = false;
};

RunTrace adapt_vqe_run(const Problem& problem, const OperatorPool& pool,
                       const StateVector& initial, const VqeOptions& options);

/// Continues the ADAPT-VQE outer loop from an existing circuit, appending
/// rows to `trace` and charging `counter`.
void adapt_vqe_continue(const Problem& problem, const OperatorPool& pool, Ansatz& ansatz,
                        OptimizerState& optimizer, const VqeOptions& options,
                        FevalCounter& counter, RunTrace& trace);

struct HybridOptions {
  NovaOptions nova;
  VqeOptions vqe;
  /// NoVa operators added before switching.
  int switch_iteration = 5;
};

/// NoVa for switch_iteration operators, then ADAPT-VQE seeded with the
/// applied eta values and an identity inverse Hessian.
RunTrace hybrid_run(const Problem& problem, const OperatorPool& pool,
                    const StateVector& initial, const HybridOptions& options);

}  // namespace nova
