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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "nova/fermion.hpp"
#include "nova/noise.hpp"
#include "nova/pauli.hpp"
#include "nova/statevector.hpp"
#include "nova/trace.hpp"

namespace nova {

/// Chemical accuracy in Hartree.
inline constexpr double kChemicalAccuracy = 1.6e-3;

/// Hamiltonian with the per-run constants every algorithm needs.
struct Problem {
  explicit Problem(PauliSum hamiltonian);
  Problem(PauliSum hamiltonian, double ground_energy, double h_norm);

  int n_qubits() const { return h.n_qubits(); }
  double energy(const StateVector& state) const { return h.expectation(state); }

  Observable h;
  double ground_energy;
  /// Spectral norm of the Hamiltonian.
  double h_norm;
};

/// Pool operators with cached propagators and spectral norms.
class OperatorPool {
 public:
  explicit OperatorPool(std::vector<PoolOperator> operators);

  std::size_t size() const { return operators_.size(); }
  const PoolOperator& op(std::size_t i) const { return operators_[i]; }
  const std::vector<PoolOperator>& operators() const { return operators_; }
  const ExactPropagator& propagator(std::size_t i) const { return propagators_[i]; }
  const PauliKernel& kernel(std::size_t i) const { return propagators_[i].kernel(); }
  double norm(std::size_t i) const { return norms_[i]; }

 private:
  std::vector<PoolOperator> operators_;
  std::vector<ExactPropagator> propagators_;
  std::vector<double> norms_;
};

struct GammaStrategy {
  enum class Kind { kConstant, kLowerBound, kSecondDerivative };

  Kind kind = Kind::kSecondDerivative;
  /// Used by kConstant.
  double gamma = 1.0;
  /// Used by kSecondDerivative at non-negative curvature; unset means the
  /// lower-bound value.
  std::optional<double> fallback_gamma;
  double curvature_epsilon = 1e-8;

  static GammaStrategy constant(double gamma);
  static GammaStrategy lower_bound();
  static GammaStrategy second_derivative(std::optional<double> fallback = std::nullopt);
};

std::string to_string(GammaStrategy::Kind kind);

/// 1 / (4 ||H|| ||A||^2).
double lower_bound_gamma(double h_norm, double a_norm);

struct StoppingRule {
  int max_operators = 200;
  double gradient_tolerance = 1e-6;
  /// Stop once energy_error < target; disabled when <= 0.
  double energy_error_target = 0.0;
  /// Disabled when <= 0.
  long max_fevals = 0;
};

/// One gradient per operator, each costing one feval, then gradient noise.
std::vector<double> screen_pool(const StateVector& state, const Eigen::VectorXcd& h_psi,
                                const OperatorPool& pool, FevalCounter& counter,
                                const GradientNoise& noise = {},
                                std::mt19937_64* rng = nullptr);

/// Index of the largest |gradient|; the lowest index wins ties.
std::size_t select_operator(const std::vector<double>& gradients);

struct EtaResult {
  double eta;
  double gamma;
  bool used_fallback = false;
  /// Measured curvature, NaN when not measured.
  double second_derivative;
};

/// eta = -gamma * gradient under `strategy`; kSecondDerivative costs one feval.
EtaResult compute_eta(const StateVector& state, const Eigen::VectorXcd& h_psi,
                      const Problem& problem, const PauliKernel& a, double a_norm,
                      double gradient, const GammaStrategy& strategy,
                      FevalCounter& counter);

struct NovaOptions {
  GammaStrategy gamma;
  StoppingRule stop;
  NoiseConfig noise;
  std::uint64_t seed = 0;
};

/// Row 0 of every trace: the initial state, zero cost.
IterationRecord initial_record(const Problem& problem, double energy);

RunTrace nova_run(const Problem& problem, const OperatorPool& pool,
                  const StateVector& initial, const NovaOptions& options);

/// Result of an adaptive loop that leaves an explicit circuit behind.
struct AnsatzTrace {
  RunTrace trace;
  std::vector<std::size_t> operators;
  std::vector<double> parameters;
  long fevals = 0;
};

/// nova_run keeping the applied operators and angles.
AnsatzTrace nova_run_ansatz(const Problem& problem, const OperatorPool& pool,
                            const StateVector& initial, const NovaOptions& options);

}  // namespace nova
