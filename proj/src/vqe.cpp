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

#include "nova/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nova/random.hpp"

namespace nova {

namespace {

void check_ansatz(const Ansatz& ansatz, const OperatorPool& pool) {
  if (static_cast<Eigen::Index>(ansatz.operators.size()) != ansatz.parameters.size()) {
    throw std::invalid_argument("Ansatz: operator and parameter counts differ");
  }
  for (auto k : ansatz.operators) {
    if (k >= pool.size()) throw std::invalid_argument("Ansatz: operator index out of range");
  }
}

Eigen::VectorXcd forward(const Ansatz& ansatz, const OperatorPool& pool) {
  Eigen::VectorXcd psi = ansatz.reference.amplitudes();
  for (std::size_t k = 0; k < ansatz.size(); ++k) {
    pool.propagator(ansatz.operators[k])
        .apply_inplace(psi, ansatz.parameters[static_cast<Eigen::Index>(k)]);
  }
  return psi;
}

}  // namespace

StateVector ansatz_state(const Ansatz& ansatz, const OperatorPool& pool) {
  check_ansatz(ansatz, pool);
  return StateVector::from_amplitudes(forward(ansatz, pool));
}

EnergyGradient ansatz_energy_and_gradient(const Ansatz& ansatz, const OperatorPool& pool,
                                          const Problem& problem, FevalCounter& counter,
                                          bool per_parameter) {
  check_ansatz(ansatz, pool);
  Eigen::VectorXcd phi = forward(ansatz, pool);
  Eigen::VectorXcd lambda = problem.h.apply(phi);
  EnergyGradient out{phi.dot(lambda).real(), Eigen::VectorXd(ansatz.parameters.size())};
  Eigen::VectorXcd a_phi;
  for (std::size_t j = ansatz.size(); j-- > 0;) {
    const auto k = ansatz.operators[j];
    const double theta = ansatz.parameters[static_cast<Eigen::Index>(j)];
    pool.kernel(k).apply(phi, a_phi);
    out.gradient[static_cast<Eigen::Index>(j)] = -2.0 * lambda.dot(a_phi).imag();
    if (j > 0) {
      pool.propagator(k).apply_inplace(phi, -theta);
      pool.propagator(k).apply_inplace(lambda, -theta);
    }
  }
  counter.add(per_parameter ? 1 + static_cast<long>(ansatz.size()) : 2);
  return out;
}

OptimizerState recycle_hessian(const OptimizerState& previous, Eigen::Index new_dimension) {
  const Eigen::Index n = previous.inverse_hessian.rows();
  if (new_dimension != n + 1) {
    throw std::invalid_argument("recycle_hessian: dimension must grow by one");
  }
  OptimizerState out;
  out.inverse_hessian = Eigen::MatrixXd::Identity(new_dimension, new_dimension);
  out.inverse_hessian.topLeftCorner(n, n) = previous.inverse_hessian;
  return out;
}

// ---------------------------------------------------------------------------
// BFGS

namespace {

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double d;  // directional derivative
  Eigen::VectorXd x;
  Eigen::VectorXd g;
};

// Minimizer of the cubic through (a, fa, da) and (b, fb, db), or NaN.
double cubic_min(double a, double fa, double da, double b, double fb, double db) {
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  return b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
}

class LineSearch {
 public:
  LineSearch(const Objective& f, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
             double f0, double d0, const BfgsOptions& opt, int& evals)
      : f_(f), x_(x), p_(p), f0_(f0), d0_(d0), opt_(opt), evals_(evals) {}

  // Returns the accepted point; sets ok = false when no strong-Wolfe point was
  // found (the best point seen is returned instead).
  Point run(bool& ok) {
    ok = true;
    Point prev{0.0, f0_, d0_, x_, {}};
    double alpha = 1.0;
    for (int i = 0; i < opt_.max_line_search; ++i) {
      Point cur = eval(alpha);
      if (cur.f > f0_ + opt_.c1 * alpha * d0_ || (i > 0 && cur.f >= prev.f)) {
        return zoom(prev, cur, ok);
      }
      if (std::abs(cur.d) <= -opt_.c2 * d0_) return cur;
      if (cur.d >= 0.0) return zoom(cur, prev, ok);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    ok = false;
    return best_;
  }

 private:
  Point eval(double alpha) {
    Point pt;
    pt.alpha = alpha;
    pt.x = x_ + alpha * p_;
    auto [fv, gv] = f_(pt.x);
    ++evals_;
    pt.f = fv;
    pt.g = std::move(gv);
    pt.d = pt.g.dot(p_);
    if (!have_best_ || pt.f < best_.f) {
      best_ = pt;
      have_best_ = true;
    }
    return pt;
  }

  Point zoom(Point lo, Point hi, bool& ok) {
    for (int i = 0; i < opt_.max_line_search; ++i) {
      const double width = hi.alpha - lo.alpha;
      double alpha = cubic_min(lo.alpha, lo.f, lo.d, hi.alpha, hi.f, hi.d);
      const double a_min = std::min(lo.alpha, hi.alpha) + 0.1 * std::abs(width);
      const double a_max = std::max(lo.alpha, hi.alpha) - 0.1 * std::abs(width);
      if (!std::isfinite(alpha) || alpha < a_min || alpha > a_max) {
        alpha = lo.alpha + 0.5 * width;
      }
      if (std::abs(width) < 1e-14) break;
      Point cur = eval(alpha);
      if (cur.f > f0_ + opt_.c1 * alpha * d0_ || cur.f >= lo.f) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.d) <= -opt_.c2 * d0_) return cur;
        if (cur.d * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(cur);
      }
    }
    ok = false;
    return best_;
  }

  const Objective& f_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  double f0_, d0_;
  const BfgsOptions& opt_;
  int& evals_;
  Point best_{};
  bool have_best_ = false;
};

}  // namespace

BfgsResult bfgs_minimize(const Objective& f, Eigen::VectorXd x0,
                         Eigen::MatrixXd inverse_hessian, const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  if (inverse_hessian.rows() != n || inverse_hessian.cols() != n) {
    throw std::invalid_argument("bfgs_minimize: inverse Hessian has wrong dimension");
  }
  BfgsResult r;
  r.x = std::move(x0);
  r.inverse_hessian = std::move(inverse_hessian);
  {
    auto [fv, gv] = f(r.x);
    r.f = fv;
    r.g = std::move(gv);
    r.evaluations = 1;
  }
  if (n == 0) return r;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  for (; r.iterations < options.max_iterations; ++r.iterations) {
    if (r.g.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      r.status = BfgsStatus::kConverged;
      return r;
    }
    Eigen::VectorXd p = -r.inverse_hessian * r.g;
    double d0 = r.g.dot(p);
    if (!(d0 < 0.0)) {
      r.inverse_hessian = eye;
      p = -r.g;
      d0 = r.g.dot(p);
    }
    bool ok = true;
    LineSearch ls(f, r.x, p, r.f, d0, options, r.evaluations);
    Point next = ls.run(ok);
    if (!ok) {
      if (next.f < r.f) {
        r.x = std::move(next.x);
        r.f = next.f;
        r.g = std::move(next.g);
      }
      r.status = BfgsStatus::kLineSearchFailure;
      return r;
    }
    const Eigen::VectorXd s = next.x - r.x;
    const Eigen::VectorXd y = next.g - r.g;
    const double sy = s.dot(y);
    if (sy > 0.0) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = eye - rho * s * y.transpose();
      Eigen::MatrixXd h = left * r.inverse_hessian * left.transpose() + rho * s * s.transpose();
      r.inverse_hessian = 0.5 * (h + h.transpose());
    }
    r.x = std::move(next.x);
    r.f = next.f;
    r.g = std::move(next.g);
  }
  r.status = r.g.lpNorm<Eigen::Infinity>() < options.gradient_tolerance
                 ? BfgsStatus::kConverged
                 : BfgsStatus::kMaxIterations;
  return r;
}

BfgsResult bfgs_minimize(Ansatz& ansatz, const OperatorPool& pool, const Problem& problem,
                         OptimizerState& state, FevalCounter& counter,
                         const BfgsOptions& options, bool per_parameter) {
  check_ansatz(ansatz, pool);
  Ansatz work = ansatz;
  const Objective objective = [&](const Eigen::VectorXd& x) {
    work.parameters = x;
    auto eg = ansatz_energy_and_gradient(work, pool, problem, counter, per_parameter);
    return std::make_pair(eg.energy, std::move(eg.gradient));
  };
  auto result = bfgs_minimize(objective, ansatz.parameters, state.inverse_hessian, options);
  ansatz.parameters = result.x;
  state.inverse_hessian = result.inverse_hessian;
  return result;
}

// ---------------------------------------------------------------------------
// ADAPT-VQE

void adapt_vqe_continue(const Problem& problem, const OperatorPool& pool, Ansatz& ansatz,
                        OptimizerState& optimizer, const VqeOptions& options,
                        FevalCounter& counter, RunTrace& trace) {
  auto rot_rng = make_stream(options.seed, Stream::kRotationNoise);
  auto grad_rng = make_stream(options.seed, Stream::kGradientNoise);
  const auto& stop = options.stop;
  Eigen::VectorXcd psi = forward(ansatz, pool);
  Eigen::VectorXcd h_psi = problem.h.apply(psi);
  double energy = psi.dot(h_psi).real();

  for (int n = trace.records.back().iter + 1;; ++n) {
    const int n_ops = static_cast<int>(ansatz.size());
    if (n_ops >= stop.max_operators) {
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
    double norm = 0.0;
    for (double g : grads) norm += g * g;
    if (std::sqrt(norm) < stop.gradient_tolerance) {
      trace.status = TerminalStatus::kGradientNorm;
      break;
    }
    const std::size_t k = select_operator(grads);
    ansatz.operators.push_back(k);
    ansatz.parameters.conservativeResize(n_ops + 1);
    ansatz.parameters[n_ops] = 0.0;
    optimizer = options.recycle_hessian
                    ? recycle_hessian(optimizer, n_ops + 1)
                    : OptimizerState{Eigen::MatrixXd::Identity(n_ops + 1, n_ops + 1)};
    const auto result = bfgs_minimize(ansatz, pool, problem, optimizer, counter,
                                      options.bfgs, options.count_gradient_per_parameter);
    if (result.status != BfgsStatus::kConverged) {
      trace.notes.push_back("iteration " + std::to_string(n) + ": BFGS " +
                            (result.status == BfgsStatus::kLineSearchFailure
                                 ? "line-search failure"
                                 : "hit max iterations"));
    }
    const double theta_new = ansatz.parameters[n_ops];
    ansatz.parameters = perturb_parameters(ansatz.parameters, options.noise.rotation, rot_rng);

    psi = forward(ansatz, pool);
    h_psi = problem.h.apply(psi);
    energy = psi.dot(h_psi).real();
    counter.add();

    IterationRecord r;
    r.iter = n;
    r.label = pool.op(k).label;
    r.gradient = grads[k];
    r.eta = theta_new;
    r.energy = energy;
    r.energy_error = energy - problem.ground_energy;
    r.fevals = counter.count();
    r.n_ops = n_ops + 1;
    r.phase = "vqe";
    trace.records.push_back(std::move(r));
  }
  trace.total_fevals = counter.count();
}

RunTrace adapt_vqe_run(const Problem& problem, const OperatorPool& pool,
                       const StateVector& initial, const VqeOptions& options) {
  if (initial.n_qubits() != problem.n_qubits()) {
    throw std::invalid_argument("adapt_vqe_run: register size mismatch");
  }
  RunTrace trace;
  trace.algorithm = "adapt_vqe";
  trace.seed = options.seed;
  trace.records.push_back(initial_record(problem, problem.energy(initial)));
  Ansatz ansatz(initial);
  OptimizerState optimizer;
  FevalCounter counter;
  adapt_vqe_continue(problem, pool, ansatz, optimizer, options, counter, trace);
  return trace;
}

RunTrace hybrid_run(const Problem& problem, const OperatorPool& pool,
                    const StateVector& initial, const HybridOptions& options) {
  if (options.switch_iteration < 0) {
    throw std::invalid_argument("hybrid_run: switch_iteration must be >= 0");
  }
  const int cap = options.vqe.stop.max_operators;
  NovaOptions nova = options.nova;
  nova.stop.max_operators = std::min(options.switch_iteration, cap);
  auto phase1 = nova_run_ansatz(problem, pool, initial, nova);
  RunTrace trace = std::move(phase1.trace);
  trace.algorithm = "hybrid";
  if (trace.status != TerminalStatus::kMaxOperators || options.switch_iteration >= cap) {
    if (options.switch_iteration >= cap) trace.status = TerminalStatus::kMaxOperators;
    return trace;
  }
  Ansatz ansatz(initial);
  ansatz.operators = phase1.operators;
  ansatz.parameters = Eigen::Map<const Eigen::VectorXd>(
      phase1.parameters.data(), static_cast<Eigen::Index>(phase1.parameters.size()));
  const auto k = static_cast<Eigen::Index>(ansatz.size());
  OptimizerState optimizer{Eigen::MatrixXd::Identity(k, k)};
  FevalCounter counter;
  counter.add(phase1.fevals);
  adapt_vqe_continue(problem, pool, ansatz, optimizer, options.vqe, counter, trace);
  trace.notes.push_back("switched to ADAPT-VQE after " + std::to_string(k) + " operators");
  return trace;
}

}  // namespace nova
