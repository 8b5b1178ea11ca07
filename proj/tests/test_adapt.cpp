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

#include <gtest/gtest.h>

#include "h4_fixture.hpp"
#include "nova/adapt.hpp"
#include "test_util.hpp"

namespace nova {
namespace {

using testing::h4;

PauliSum word(const char* label) { return PauliSum::from_word(PauliString::from_label(label)); }

struct OneQubit {
  Problem problem;
  PauliKernel a;
  explicit OneQubit(const char* h, const char* gen) : problem(word(h)), a(word(gen)) {}

  EtaResult eta(const StateVector& s, const GammaStrategy& g, FevalCounter& counter) const {
    const Eigen::VectorXcd h_psi = problem.h.apply(s.amplitudes());
    const double grad = energy_gradient(s, h_psi, a);
    return compute_eta(s, h_psi, problem, a, 1.0, grad, g, counter);
  }
};

StateVector rotated_zero(double theta) {
  return apply_exp(StateVector(1), word("Y"), theta);
}

TEST(ComputeEta, ConstantFlipsSign) {
  const Problem p(word("Z"));
  FevalCounter c;
  const auto r = compute_eta(StateVector(1), Eigen::VectorXcd::Zero(2), p, PauliKernel(word("Y")),
                             1.0, -2.0, GammaStrategy::constant(1.0), c);
  EXPECT_DOUBLE_EQ(r.eta, 2.0);
  EXPECT_EQ(c.count(), 0);
}

TEST(ComputeEta, LowerBoundValue) {
  EXPECT_DOUBLE_EQ(lower_bound_gamma(2.0, 1.0), 1.0 / 8.0);
  EXPECT_THROW(GammaStrategy::constant(0.0), std::invalid_argument);
  EXPECT_THROW(GammaStrategy::second_derivative(-1.0), std::invalid_argument);
}

// E(theta) = cos 2 theta along e^{i theta Y}|0>; at theta = 1.2 the
// landscape is convex and the Newton step is -tan(2.4)/2.
TEST(ComputeEta, SecondDerivativeNewtonStepOnCosine) {
  const OneQubit q("Z", "Y");
  const double theta = 1.2;
  FevalCounter c;
  const auto r = q.eta(rotated_zero(theta), GammaStrategy::second_derivative(), c);
  EXPECT_FALSE(r.used_fallback);
  EXPECT_NEAR(r.second_derivative, -4.0 * std::cos(2.0 * theta), 1e-12);
  EXPECT_NEAR(r.eta, -std::tan(2.0 * theta) / 2.0, 1e-12);
  EXPECT_EQ(c.count(), 1);
  const double before = std::cos(2.0 * theta), after = std::cos(2.0 * (theta + r.eta));
  EXPECT_LT(after, before);
  EXPECT_NEAR(theta + r.eta, M_PI / 2.0, std::pow(std::abs(r.eta), 3));
}

TEST(ComputeEta, ConcaveCurvatureFallsBack) {
  const OneQubit q("Z", "Y");
  FevalCounter c;
  const auto r = q.eta(rotated_zero(0.3), GammaStrategy::second_derivative(0.05), c);
  EXPECT_TRUE(r.used_fallback);
  EXPECT_LT(r.second_derivative, 0.0);
  EXPECT_DOUBLE_EQ(r.gamma, 0.05);
}

TEST(ComputeEta, InflectionFallsBackToLowerBound) {
  const OneQubit q("X", "Y");
  FevalCounter c;
  const auto r = q.eta(StateVector(1), GammaStrategy::second_derivative(), c);
  EXPECT_TRUE(r.used_fallback);
  EXPECT_NEAR(r.second_derivative, 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(r.gamma, lower_bound_gamma(1.0, 1.0));
  EXPECT_DOUBLE_EQ(r.eta, -r.gamma * -2.0);
}

TEST(SelectOperator, MagnitudeThenIndex) {
  EXPECT_EQ(select_operator({0.1, -0.5}), 1u);
  EXPECT_EQ(select_operator({0.3, 0.3}), 0u);
  EXPECT_EQ(select_operator({-0.3, 0.3}), 0u);
  EXPECT_THROW(select_operator({}), std::invalid_argument);
}

TEST(ScreenPool, GroundStateHasZeroGradients) {
  const auto& f = h4();
  const auto ground = exact_ground_energy(f.problem.h.sum()).second;
  FevalCounter c;
  const auto g = screen_pool(ground, f.problem.h.apply(ground.amplitudes()), f.pool, c);
  EXPECT_EQ(c.count(), static_cast<long>(f.pool.size()));
  for (double x : g) EXPECT_NEAR(x, 0.0, 1e-9);
}

TEST(ScreenPool, MatchesFiniteDifferenceOracle) {
  const auto& f = h4();
  FevalCounter c;
  const auto g = screen_pool(f.hf, f.problem.h.apply(f.hf.amplitudes()), f.pool, c);
  std::vector<double> fd(f.pool.size());
  const double s = 1e-5;
  for (std::size_t k = 0; k < f.pool.size(); ++k) {
    const auto& gen = f.pool.op(k).generator;
    fd[k] = (f.problem.energy(apply_exp(f.hf, gen, s)) -
             f.problem.energy(apply_exp(f.hf, gen, -s))) / (2.0 * s);
    EXPECT_NEAR(g[k], fd[k], 1e-8) << f.pool.op(k).label;
  }
  EXPECT_EQ(select_operator(g), select_operator(fd));
}

TEST(ScreenPool, GradientNoiseUsesItsStream) {
  const auto& f = h4();
  FevalCounter c;
  std::mt19937_64 rng1(3), rng2(3);
  const Eigen::VectorXcd h_psi = f.problem.h.apply(f.hf.amplitudes());
  const auto a = screen_pool(f.hf, h_psi, f.pool, c, GradientNoise{0.01}, &rng1);
  const auto b = screen_pool(f.hf, h_psi, f.pool, c, GradientNoise{0.01}, &rng2);
  const auto clean = screen_pool(f.hf, h_psi, f.pool, c);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, clean);
}

TEST(NovaRun, GroundStateStopsImmediately) {
  const auto& f = h4();
  const auto ground = exact_ground_energy(f.problem.h.sum()).second;
  const auto t = nova_run(f.problem, f.pool, ground, {});
  EXPECT_EQ(t.status, TerminalStatus::kGradientNorm);
  EXPECT_EQ(t.records.size(), 1u);
}

TEST(NovaRun, FevalClosedForm) {
  const auto& f = h4();
  NovaOptions o;
  o.stop.max_operators = 12;
  const auto t = nova_run(f.problem, f.pool, f.hf, o);
  ASSERT_EQ(t.records.size(), 13u);
  for (std::size_t k = 1; k < t.records.size(); ++k) {
    EXPECT_EQ(t.records[k].fevals, static_cast<long>(k * (f.pool.size() + 2)));
    EXPECT_GT(t.records[k].fevals, t.records[k - 1].fevals);
  }
  EXPECT_EQ(t.status, TerminalStatus::kMaxOperators);
}

TEST(NovaRun, LowerBoundDescends) {
  const auto& f = h4();
  NovaOptions o;
  o.gamma = GammaStrategy::lower_bound();
  o.stop.max_operators = 40;
  const auto t = nova_run(f.problem, f.pool, f.hf, o);
  EXPECT_EQ(t.descent_violations, 0);
  EXPECT_GE(t.min_descent_margin, -1e-10);
  for (std::size_t k = 1; k < t.records.size(); ++k)
    EXPECT_LE(t.records[k].energy, t.records[k - 1].energy);
}

TEST(NovaRun, SmallConstantGammaNeverIncreasesEnergy) {
  const auto& f = h4();
  NovaOptions o;
  o.gamma = GammaStrategy::constant(0.5 * lower_bound_gamma(f.problem.h_norm, 1.0));
  o.stop.max_operators = 20;
  const auto t = nova_run(f.problem, f.pool, f.hf, o);
  for (std::size_t k = 1; k < t.records.size(); ++k)
    EXPECT_LE(t.records[k].energy, t.records[k - 1].energy + 1e-14);
}

TEST(NovaRun, EnergyTargetStops) {
  const auto& f = h4();
  NovaOptions o;
  o.stop.energy_error_target = 0.05;
  const auto t = nova_run(f.problem, f.pool, f.hf, o);
  EXPECT_EQ(t.status, TerminalStatus::kEnergyTarget);
  EXPECT_LT(t.last().energy_error, 0.05);
  EXPECT_GE(t.records[t.records.size() - 2].energy_error, 0.05);
}

TEST(NovaRun, DeterministicForSeed) {
  const auto& f = h4();
  NovaOptions o;
  o.stop.max_operators = 8;
  o.noise.rotation.sigma = 0.01;
  o.seed = 42;
  std::ostringstream a, b, c;
  nova_run(f.problem, f.pool, f.hf, o).write_csv(a);
  nova_run(f.problem, f.pool, f.hf, o).write_csv(b);
  o.seed = 43;
  nova_run(f.problem, f.pool, f.hf, o).write_csv(c);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(NovaRun, ExplicitCircuitReproducesState) {
  const auto& f = h4();
  NovaOptions o;
  o.stop.max_operators = 6;
  const auto r = nova_run_ansatz(f.problem, f.pool, f.hf, o);
  StateVector s = f.hf;
  for (std::size_t k = 0; k < r.operators.size(); ++k)
    s = f.pool.propagator(r.operators[k]).apply(s, r.parameters[k]);
  EXPECT_NEAR(f.problem.energy(s), r.trace.last().energy, 1e-12);
}

}  // namespace
}  // namespace nova
