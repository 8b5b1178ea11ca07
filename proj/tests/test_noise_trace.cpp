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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nova/noise.hpp"
#include "nova/trace.hpp"

namespace nova {
namespace {

RunTrace trace_with_errors(std::uint64_t seed, std::vector<double> errors) {
  RunTrace t;
  t.seed = seed;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    IterationRecord r;
    r.iter = static_cast<int>(k);
    r.energy_error = errors[k];
    r.fevals = static_cast<long>(10 * k);
    r.n_ops = static_cast<int>(k);
    r.label = k == 0 ? "initial" : "op";
    r.phase = "nova";
    t.records.push_back(r);
  }
  return t;
}

TEST(Noise, ZeroSigmaDrawsNothing) {
  std::mt19937_64 rng(1), copy(1);
  const Eigen::VectorXd p = Eigen::Vector3d(0.1, 0.2, 0.3);
  EXPECT_EQ(perturb_parameters(p, {0.0}, rng), p);
  EXPECT_EQ(perturb_gradients({1.0, 2.0}, {0.0}, rng), (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(perturb_parameter(0.5, {0.0}, rng), 0.5);
  EXPECT_EQ(rng(), copy());
}

TEST(Noise, GaussianMoments) {
  std::mt19937_64 rng(2);
  const int n = 20000;
  const auto out = perturb_gradients(std::vector<double>(n, 1.0), {0.01}, rng);
  double mean = 0.0, sq = 0.0;
  for (double x : out) mean += x / n;
  for (double x : out) sq += (x - mean) * (x - mean) / (n - 1);
  EXPECT_NEAR(mean, 1.0, 4.0 * 0.01 / std::sqrt(n));
  EXPECT_NEAR(std::sqrt(sq), 0.01, 3e-4);
}

TEST(Aggregate, CarriesShorterTracesForward) {
  const auto rows = aggregate_by_iteration(
      {trace_with_errors(0, {1.0, 0.5}), trace_with_errors(1, {1.0, 0.3, 0.1})});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[2].mean, 0.3);
  EXPECT_EQ(rows[2].n_alive, 1);
  EXPECT_EQ(rows[1].n_alive, 2);
  EXPECT_DOUBLE_EQ(rows[1].median, 0.4);
  EXPECT_NEAR(rows[1].stddev, std::sqrt(0.02), 1e-15);
  EXPECT_EQ(aggregate_csv(rows).substr(0, aggregate_csv(rows).find('\n')),
            "iteration,mean_energy_error,median,q25,q75,stddev,n_alive");
}

TEST(Ensemble, SeedsThreadsAndFailures) {
  const auto run = [](std::uint64_t seed) {
    if (seed == 13) throw std::runtime_error("boom");
    return trace_with_errors(seed, {1.0, 1.0 / double(seed)});
  };
  const auto one = ensemble_run(run, 6, 10, 1);
  const auto many = ensemble_run(run, 6, 10, 3);
  ASSERT_EQ(one.traces.size(), 5u);
  EXPECT_EQ(one.failed_seeds, (std::vector<std::uint64_t>{13}));
  EXPECT_NE(one.failure_messages.front().find("boom"), std::string::npos);
  for (std::size_t k = 0; k < one.traces.size(); ++k)
    EXPECT_EQ(one.traces[k].seed, many.traces[k].seed);
  EXPECT_EQ(aggregate_csv(one.aggregate), aggregate_csv(many.aggregate));
  EXPECT_EQ(one.traces.front().seed, 10u);
}

TEST(Trace, CsvRoundTrip) {
  auto t = trace_with_errors(0, {0.16695233140307963, 1.0 / 3.0, 1e-300});
  t.records[1].eta = -0.350194165090112;
  t.records[1].label = "dS(2,2;1,1)";
  std::stringstream ss;
  t.write_csv(ss);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kTraceCsvHeader);
  const auto back = read_trace_csv(ss);
  ASSERT_EQ(back.size(), t.records.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].energy_error, t.records[k].energy_error);
    EXPECT_EQ(back[k].eta, t.records[k].eta);
    EXPECT_EQ(back[k].label, t.records[k].label);
    EXPECT_EQ(back[k].fevals, t.records[k].fevals);
  }
  std::stringstream bad("iter,nope\n1,2\n");
  EXPECT_THROW(read_trace_csv(bad), std::runtime_error);
}

TEST(Trace, FirstBelowAndMetadata) {
  auto t = trace_with_errors(4, {1.0, 0.01, 0.001, 0.0001});
  t.total_fevals = 31;
  ASSERT_NE(t.first_below(1.6e-3), nullptr);
  EXPECT_EQ(t.first_below(1.6e-3)->iter, 2);
  EXPECT_EQ(t.first_below(1e-9), nullptr);
  const auto m = t.metadata();
  EXPECT_EQ(m.at("seed"), 4);
  EXPECT_EQ(m.at("total_fevals"), 31);
}

TEST(Trace, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 1e300, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Trace, AtomicWriteLeavesNoTemporary) {
  const auto dir = std::filesystem::temp_directory_path() / "nova_atomic_test";
  std::filesystem::remove_all(dir);
  write_file_atomic(dir / "a.txt", "first");
  write_file_atomic(dir / "a.txt", "second");
  std::ifstream in(dir / "a.txt");
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "second");
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir),
                          std::filesystem::directory_iterator()),
            1);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nova
