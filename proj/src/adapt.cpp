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

#include "nova/adapt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nova/random.hpp"

namespace nova {

Problem::Problem(PauliSum hamiltonian)
    : h(std::move(hamiltonian)),
      ground_energy(exact_ground_energy(h.sum()).first),
      h_norm(spectral_norm(h.sum())) {}

Problem::Problem(PauliSum hamiltonian, double ground, double norm)
    : h(std::move(hamiltonian)), ground_energy(ground), h_norm(norm) {
  if (!(norm > 0.0)) throw std::invalid_argument("Problem: norm must be positive");
}

OperatorPool::OperatorPool(std::vector<PoolOperator> operators)
    : operators_(std::move(operators)) {
  if (operators_.empty()) throw std::invalid_argument("OperatorPool: empty pool");
  const int n = operators_.front().generator.n_qubits();
  propagators_.reserve(operators_.size());
  for (const auto& op : operators_) {
    if (op.generator.n_qubits() != n) {
      throw std::invalid_argument("OperatorPool: mixed register sizes");
    }
    if (!op.generator.is_hermitian() || !op.generator.is_traceless()) {
      throw std::invalid_argument("OperatorPool: generator must be Hermitian and traceless");
    }
    propagators_.emplace_back(op.generator);
    // Generators with one word or pool normalization have unit norm already.
    norms_.push_back(op.generator.size() == 1
                         ? std::abs(op.generator.terms().begin()->second)
                         : spectral_norm(op.generator));
  }
}

GammaStrategy GammaStrategy::constant(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("constant gamma must be > 0");
  GammaStrategy s;
  s.kind = Kind::kConstant;
  s.gamma = gamma;
  return s;
}

GammaStrategy GammaStrategy::lower_bound() {
  GammaStrategy s;
  s.kind = Kind::kLowerBound;
  return s;
}

GammaStrategy GammaStrategy::second_derivative(std::optional<double> fallback) {
  if (fallback && !(*fallback > 0.0)) {
    throw std::invalid_argument("fallback gamma must be > 0");
  }
  GammaStrategy s;
  s.kind = Kind::kSecondDerivative;
  s.fallback_gamma = fallback;
  return s;
}

std::string to_string(GammaStrategy::Kind kind) {
  switch (kind) {
    case GammaStrategy::Kind::kConstant: return "constant";
    case GammaStrategy::Kind::kLowerBound: return "lower_bound";
    case GammaStrategy::Kind::kSecondDerivative: return "second_derivative";
  }
  return "unknown";
}

double lower_bound_gamma(double h_norm, double a_norm) {
  if (!(h_norm > 0.0) || !(a_norm > 0.0)) {
    throw std::invalid_argument("lower_bound_gamma: norms must be positive");
  }
  return 1.0 / (4.0 * h_norm * a_norm * a_norm);
}

std::vector<double> screen_pool(const StateVector& state, const Eigen::VectorXcd& h_psi,
                                const OperatorPool& pool, FevalCounter& counter,
                                const GradientNoise& noise, std::mt19937_64* rng) {
  std::vector<double> g(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    g[i] = energy_gradient(state, h_psi, pool.kernel(i));
  }
  counter.add(static_cast<long>(pool.size()));
  if (noise.sigma > 0.0) {
    if (rng == nullptr) throw std::invalid_argument("screen_pool: noise needs an rng");
    g = perturb_gradients(g, noise, *rng);
  }
  return g;
}

std::size_t select_operator(const std::vector<double>& gradients) {
  if (gradients.empty()) throw std::invalid_argument("select_operator: empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < gradients.size(); ++i) {
    if (std::abs(gradients[i]) > std::abs(gradients[best])) best = i;
  }
  return best;
}

EtaResult compute_eta(const StateVector& state, const Eigen::VectorXcd& h_psi,
                      const Problem& problem, const PauliKernel& a, double a_norm,
                      double gradient, const GammaStrategy& strategy,
                      FevalCounter& counter) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  switch (strategy.kind) {
    case GammaStrategy::Kind::kConstant:
      return {-strategy.gamma * gradient, strategy.gamma, false, nan};
    case GammaStrategy::Kind::kLowerBound: {
      const double gamma = lower_bound_gamma(problem.h_norm, a_norm);
      return {-gamma * gradient, gamma, false, nan};
    }
    case GammaStrategy::Kind::kSecondDerivative: {
      const double d2 = energy_second_derivative(state, h_psi, problem.h.kernel(), a);
      counter.add();
      if (d2 > strategy.curvature_epsilon) {
        const double gamma = 1.0 / d2;
        return {-gamma * gradient, gamma, false, d2};
      }
      const double gamma = strategy.fallback_gamma.value_or(
          lower_bound_gamma(problem.h_norm, a_norm));
      return {-gamma * gradient, gamma, true, d2};
    }
  }
  throw std::logic_error("compute_eta: unknown strategy");
}

IterationRecord initial_record(const Problem& problem, double energy) {
  IterationRecord r;
  r.iter = 0;
  r.label = "initial";
  r.energy = energy;
  r.energy_error = energy - problem.ground_energy;
  r.phase = "init";
  return r;
}

namespace {

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

AnsatzTrace nova_run_ansatz(const Problem& problem, const OperatorPool& pool,
                            const StateVector& initial, const NovaOptions& options) {
  if (initial.n_qubits() != problem.n_qubits() ||
      pool.op(0).generator.n_qubits() != problem.n_qubits()) {
    throw std::invalid_argument("nova_run: register size mismatch");
  }
  AnsatzTrace out;
  RunTrace& trace = out.trace;
  trace.algorithm = "nova";
  trace.seed = options.seed;
  trace.min_descent_margin = std::numeric_limits<double>::infinity();
  auto rot_rng = make_stream(options.seed, Stream::kRotationNoise);
  auto grad_rng = make_stream(options.seed, Stream::kGradientNoise);
  const bool check_descent = options.gamma.kind == GammaStrategy::Kind::kLowerBound &&
                             !options.noise.active();
  FevalCounter counter;

  Eigen::VectorXcd psi = initial.amplitudes();
  Eigen::VectorXcd h_psi = problem.h.apply(psi);
  double energy = psi.dot(h_psi).real();
  trace.records.push_back(initial_record(problem, energy));
  const auto& stop = options.stop;

  for (int n = 1;; ++n) {
    if (n - 1 >= stop.max_operators) {
      trace.status = TerminalStatus::kMaxOperators;
      break;
    }
    if (stop.energy_error_target > 0.0 &&
        energy - problem.ground_energy < stop.energy_error_target) {
      trace.status = TerminalStatus::kEnergyTarget;
      break;
    }
    if (stop.max_fevals > 0 && counter.count() >= stop.max_fevals) {
      trace.status = TerminalStatus::kMaxFevals;
      break;
    }
    const auto state = StateVector::from_amplitudes(psi);
    const auto grads =
        screen_pool(state, h_psi, pool, counter, options.noise.gradient, &grad_rng);
    if (l2(grads) < stop.gradient_tolerance) {
      trace.status = TerminalStatus::kGradientNorm;
      break;
    }
    const std::size_t k = select_operator(grads);
    const double g = grads[k];
    const auto eta = compute_eta(state, h_psi, problem, pool.kernel(k), pool.norm(k), g,
                                 options.gamma, counter);
    if (eta.used_fallback) ++trace.fallback_steps;
    const double angle = perturb_parameter(eta.eta, options.noise.rotation, rot_rng);
    pool.propagator(k).apply_inplace(psi, angle);
    h_psi = problem.h.apply(psi);
    const double previous = energy;
    energy = psi.dot(h_psi).real();
    counter.add();

    if (check_descent) {
      const double a = pool.norm(k);
      const double guaranteed = g * g / (8.0 * problem.h_norm * a * a);
      const double margin = (previous - energy) - guaranteed;
      trace.min_descent_margin = std::min(trace.min_descent_margin, margin);
      if (margin < -1e-10) ++trace.descent_violations;
    }

    out.operators.push_back(k);
    out.parameters.push_back(angle);
    IterationRecord r;
    r.iter = n;
    r.label = pool.op(k).label;
    r.gradient = g;
    r.eta = eta.eta;
    r.energy = energy;
    r.energy_error = energy - problem.ground_energy;
    r.fevals = counter.count();
    r.n_ops = n;
    r.phase = "nova";
    trace.records.push_back(std::move(r));
  }
  if (!check_descent) trace.min_descent_margin = 0.0;
  if (trace.fallback_steps > 0) {
    trace.notes.push_back("second-derivative fallback used in " +
                          std::to_string(trace.fallback_steps) + " steps");
  }
  out.fevals = counter.count();
  trace.total_fevals = out.fevals;
  return out;
}

RunTrace nova_run(const Problem& problem, const OperatorPool& pool,
                  const StateVector& initial, const NovaOptions& options) {
  return nova_run_ansatz(problem, pool, initial, options).trace;
}

}  // namespace nova
