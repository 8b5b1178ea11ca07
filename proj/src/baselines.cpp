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

#include "nova/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nova/clifford.hpp"
#include "nova/random.hpp"

namespace nova {

namespace {

IterationRecord make_record(const Problem& problem, int iter, std::string label,
                            double gradient, double eta, double energy, long fevals,
                            int n_ops, std::string phase) {
  return {iter,   std::move(label), gradient, eta, energy, energy - problem.ground_energy,
          fevals, n_ops,            std::move(phase)};
}

}  // namespace

// ---------------------------------------------------------------------------
// FQA

double fqa_lower_bound_delta_t(const Problem& problem, const PauliSum& h1) {
  PauliSum traceless = h1;
  traceless.add_term(PauliString::identity(h1.n_qubits()),
                     -h1.coefficient(PauliString::identity(h1.n_qubits())));
  traceless.prune();
  const double n1 = spectral_norm(traceless);
  if (!(n1 > 0.0)) throw std::invalid_argument("fqa: H1 has no non-identity part");
  return 1.0 / (4.0 * problem.h_norm * n1 * n1);
}

double fqa_beta(const Eigen::VectorXcd& psi, const PauliKernel& h1, const PauliKernel& h2) {
  return 2.0 * (h1 * psi).dot(h2 * psi).imag();
}

RunTrace fqa_run(const Problem& problem, const PauliSum& h1, const PauliSum& h2,
                 const StateVector& initial, const FqaConfig& config) {
  if ((h1 + h2 - problem.h.sum()).prune().size() != 0) {
    throw std::invalid_argument("fqa_run: H1 + H2 must equal H");
  }
  if (config.trotter_steps < 1 || config.max_layers < 0) {
    throw std::invalid_argument("fqa_run: bad layer or step count");
  }
  const double dt = config.delta_t.value_or(fqa_lower_bound_delta_t(problem, h1));
  if (!(dt > 0.0)) throw std::invalid_argument("fqa_run: delta_t must be > 0");

  RunTrace trace;
  trace.algorithm = "fqa";
  trace.notes.push_back("delta_t=" + format_double(dt));
  const PauliKernel k1(h1), k2(h2);
  const auto words_h = weighted_words(problem.h.sum());
  const auto words_1 = weighted_words(h1);
  FevalCounter counter;
  Eigen::VectorXcd psi = initial.amplitudes();
  double energy = problem.energy(initial);
  trace.records.push_back(initial_record(problem, energy));
  trace.status = TerminalStatus::kMaxIterations;
  for (int n = 1; n <= config.max_layers; ++n) {
    if (config.energy_error_target > 0.0 &&
        energy - problem.ground_energy < config.energy_error_target) {
      trace.status = TerminalStatus::kEnergyTarget;
      break;
    }
    const double beta = fqa_beta(psi, k1, k2);
    counter.add();
    const double step = dt / config.trotter_steps;
    for (int s = 0; s < config.trotter_steps; ++s)
      for (const auto& w : words_h)
        if (!w.word.is_identity()) rotate_word_inplace(psi, w.word, -step * w.coefficient);
    for (int s = 0; s < config.trotter_steps; ++s)
      for (const auto& w : words_1)
        if (!w.word.is_identity())
          rotate_word_inplace(psi, w.word, -beta * step * w.coefficient);
    energy = psi.dot(problem.h.apply(psi)).real();
    counter.add();
    trace.records.push_back(
        make_record(problem, n, "layer", beta, beta, energy, counter.count(), n, "fqa"));
  }
  trace.total_fevals = counter.count();
  return trace;
}

// ---------------------------------------------------------------------------
// Randomized runs

namespace {

struct Candidate {
  const PauliKernel* kernel;
  const ExactPropagator* propagator;
  const std::string* label;
  double norm;
};

template <class Sampler>
RunTrace random_loop(const Problem& problem, const StateVector& initial,
                     const RandomOptions& options, const std::string& algorithm,
                     Sampler&& sample) {
  if (initial.n_qubits() != problem.n_qubits()) {
    throw std::invalid_argument(algorithm + ": register size mismatch");
  }
  RunTrace trace;
  trace.algorithm = algorithm;
  trace.seed = options.seed;
  auto alg_rng = make_stream(options.seed, Stream::kAlgorithm);
  auto rot_rng = make_stream(options.seed, Stream::kRotationNoise);
  auto grad_rng = make_stream(options.seed, Stream::kGradientNoise);
  FevalCounter counter;
  Eigen::VectorXcd psi = initial.amplitudes();
  Eigen::VectorXcd h_psi = problem.h.apply(psi);
  double energy = psi.dot(h_psi).real();
  trace.records.push_back(initial_record(problem, energy));
  const auto& stop = options.stop;
  int rejected_total = 0;

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
    std::optional<Candidate> chosen;
    double g = 0.0;
    for (int tries = 0; tries < options.max_rejections; ++tries) {
      Candidate c = sample(alg_rng);
      g = energy_gradient(state, h_psi, *c.kernel);
      counter.add();
      g = perturb_gradients({g}, options.noise.gradient, grad_rng)[0];
      if (std::abs(g) > options.rejection_threshold) {
        chosen = c;
        break;
      }
      ++rejected_total;
    }
    if (!chosen) {
      trace.status = TerminalStatus::kStationary;
      break;
    }
    const auto eta = compute_eta(state, h_psi, problem, *chosen->kernel, chosen->norm, g,
                                 options.gamma, counter);
    if (eta.used_fallback) ++trace.fallback_steps;
    const double angle = perturb_parameter(eta.eta, options.noise.rotation, rot_rng);
    chosen->propagator->apply_inplace(psi, angle);
    h_psi = problem.h.apply(psi);
    energy = psi.dot(h_psi).real();
    counter.add();
    trace.records.push_back(make_record(problem, n, *chosen->label, g, eta.eta, energy,
                                        counter.count(), n, "random"));
  }
  trace.notes.push_back("rejected samples: " + std::to_string(rejected_total));
  trace.total_fevals = counter.count();
  return trace;
}

}  // namespace

RunTrace random_pool_run(const Problem& problem, const OperatorPool& pool,
                         const StateVector& initial, const RandomOptions& options) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return random_loop(problem, initial, options, "random_pool", [&](std::mt19937_64& rng) {
    const std::size_t k = pick(rng);
    return Candidate{&pool.kernel(k), &pool.propagator(k), &pool.op(k).label, pool.norm(k)};
  });
}

RunTrace random_2design_run(const Problem& problem, const PoolOperator& fixed_op,
                            const StateVector& initial, const RandomOptions& options) {
  const auto& a = fixed_op.generator;
  if (!a.is_hermitian() || !a.is_traceless()) {
    throw std::invalid_argument("random_2design_run: operator must be traceless Hermitian");
  }
  const ExactPropagator base(a);
  const double norm = spectral_norm(a);
  std::optional<ExactPropagator> current;
  const std::string label = fixed_op.label + "^C";
  return random_loop(problem, initial, options, "random_2design",
                     [&](std::mt19937_64& rng) {
                       const auto c = Clifford::random(a.n_qubits(), rng);
                       current.emplace(base.conjugate_to(c.conjugate(a)));
                       return Candidate{&current->kernel(), &*current, &label, norm};
                     });
}

// ---------------------------------------------------------------------------
// ACSE

std::string to_string(AcseConfig::Ordering ordering) {
  return ordering == AcseConfig::Ordering::kPoolOrder ? "pool_order" : "gradient_descending";
}

std::vector<Complex> acse_s_coefficients(const StateVector& state, const PauliSum& h,
                                         const OperatorPool& pool) {
  std::vector<Complex> s;
  s.reserve(pool.size());
  for (const auto& op : pool.operators()) {
    const PauliKernel c(commutator(op.generator, h));
    s.push_back(state.amplitudes().dot(c * state.amplitudes()));
  }
  return s;
}

namespace {

struct AcseStep {
  std::vector<std::size_t> order;
  std::vector<double> grads;
};

Eigen::VectorXcd apply_acse_step(const OperatorPool& pool, const AcseStep& step,
                                 Eigen::VectorXcd psi, double epsilon, int& applied) {
  applied = 0;
  for (auto k : step.order) {
    const double angle = -epsilon * step.grads[k];
    if (angle == 0.0) continue;
    pool.propagator(k).apply_inplace(psi, angle);
    ++applied;
  }
  return psi;
}

}  // namespace

RunTrace acse_run(const Problem& problem, const OperatorPool& pool,
                  const StateVector& initial, const AcseConfig& config) {
  if (config.epsilon && !(*config.epsilon > 0.0)) {
    throw std::invalid_argument("acse_run: epsilon must be > 0");
  }
  if (!(config.epsilon_max > 0.0) || config.line_search_evaluations < 3) {
    throw std::invalid_argument("acse_run: bad line-search settings");
  }
  RunTrace trace;
  trace.algorithm = "acse";
  FevalCounter counter;
  Eigen::VectorXcd psi = initial.amplitudes();
  Eigen::VectorXcd h_psi = problem.h.apply(psi);
  double energy = psi.dot(h_psi).real();
  trace.records.push_back(initial_record(problem, energy));
  std::optional<double> epsilon = config.epsilon;
  int n_ops = 0;
  trace.status = TerminalStatus::kMaxIterations;

  for (int n = 1; n <= config.max_iterations; ++n) {
    if (config.energy_error_target > 0.0 &&
        energy - problem.ground_energy < config.energy_error_target) {
      trace.status = TerminalStatus::kEnergyTarget;
      break;
    }
    AcseStep step;
    step.grads = screen_pool(StateVector::from_amplitudes(psi), h_psi, pool, counter);
    double norm = 0.0;
    for (double g : step.grads) norm += g * g;
    norm = std::sqrt(norm);
    if (norm < config.gradient_tolerance) {
      trace.status = TerminalStatus::kStationary;
      break;
    }
    step.order.resize(pool.size());
    std::iota(step.order.begin(), step.order.end(), std::size_t{0});
    if (config.ordering == AcseConfig::Ordering::kGradientDescending) {
      std::stable_sort(step.order.begin(), step.order.end(), [&](auto a, auto b) {
        return std::abs(step.grads[a]) > std::abs(step.grads[b]);
      });
    }
    int applied = 0;
    if (!epsilon || (config.reoptimize_epsilon && !config.epsilon)) {
      const auto trial = [&](double e) {
        int unused = 0;
        const Eigen::VectorXcd v = apply_acse_step(pool, step, psi, e, unused);
        counter.add();
        return v.dot(problem.h.apply(v)).real();
      };
      const double r = (std::sqrt(5.0) - 1.0) / 2.0;
      double lo = 0.0, hi = config.epsilon_max;
      double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
      double f1 = trial(x1), f2 = trial(x2);
      for (int i = 2; i < config.line_search_evaluations; ++i) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - r * (hi - lo);
          f1 = trial(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + r * (hi - lo);
          f2 = trial(x2);
        }
      }
      epsilon = f1 < f2 ? x1 : x2;
    }
    psi = apply_acse_step(pool, step, std::move(psi), *epsilon, applied);
    n_ops += applied;
    h_psi = problem.h.apply(psi);
    energy = psi.dot(h_psi).real();
    counter.add();
    trace.records.push_back(
        make_record(problem, n, "S", norm, *epsilon, energy, counter.count(), n_ops, "acse"));
  }
  trace.total_fevals = counter.count();
  return trace;
}

}  // namespace nova
