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

#include "nova/noise.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nova {

Eigen::VectorXd perturb_parameters(const Eigen::VectorXd& params,
                                   const RotationNoise& noise, std::mt19937_64& rng) {
  if (noise.sigma < 0.0) throw std::invalid_argument("rotation sigma must be >= 0");
  Eigen::VectorXd out = params;
  if (noise.sigma == 0.0) return out;
  std::normal_distribution<double> normal(0.0, noise.sigma);
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] += normal(rng);
  return out;
}

double perturb_parameter(double value, const RotationNoise& noise, std::mt19937_64& rng) {
  if (noise.sigma < 0.0) throw std::invalid_argument("rotation sigma must be >= 0");
  if (noise.sigma == 0.0) return value;
  std::normal_distribution<double> normal(0.0, noise.sigma);
  return value + normal(rng);
}

std::vector<double> perturb_gradients(const std::vector<double>& grads,
                                      const GradientNoise& noise, std::mt19937_64& rng) {
  if (noise.sigma < 0.0) throw std::invalid_argument("gradient sigma must be >= 0");
  std::vector<double> out = grads;
  if (noise.sigma == 0.0) return out;
  std::normal_distribution<double> normal(0.0, noise.sigma);
  for (auto& g : out) g += normal(rng);
  return out;
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<AggregateRow> aggregate_by_iteration(const std::vector<RunTrace>& traces) {
  std::vector<AggregateRow> rows;
  if (traces.empty()) return rows;
  std::size_t longest = 0;
  for (const auto& t : traces) longest = std::max(longest, t.records.size());
  for (std::size_t i = 0; i < longest; ++i) {
    std::vector<double> v;
    int alive = 0;
    for (const auto& t : traces) {
      if (t.records.empty()) continue;
      if (i < t.records.size()) ++alive;
      v.push_back(t.records[std::min(i, t.records.size() - 1)].energy_error);
    }
    std::sort(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
    rows.push_back({static_cast<int>(i), mean, quantile(v, 0.5), quantile(v, 0.25),
                    quantile(v, 0.75), sd, alive});
  }
  return rows;
}

EnsembleResult ensemble_run(const std::function<RunTrace(std::uint64_t)>& run,
                            int n_realizations, std::uint64_t base_seed,
                            unsigned threads) {
  if (n_realizations < 1) throw std::invalid_argument("ensemble_run: need >= 1 realization");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_realizations));

  const auto n = static_cast<std::size_t>(n_realizations);
  std::vector<RunTrace> results(n);
  std::vector<std::string> errors(n);
  std::vector<char> ok(n, 0);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = run(base_seed + i);
        ok[i] = 1;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  EnsembleResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (ok[i]) {
      out.traces.push_back(std::move(results[i]));
    } else {
      out.failed_seeds.push_back(base_seed + i);
      out.failure_messages.push_back(errors[i]);
    }
  }
  out.aggregate = aggregate_by_iteration(out.traces);
  return out;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << "iteration,mean_energy_error,median,q25,q75,stddev,n_alive\n";
  for (const auto& r : rows) {
    os << r.iteration << ',' << format_double(r.mean) << ',' << format_double(r.median)
       << ',' << format_double(r.q25) << ',' << format_double(r.q75) << ','
       << format_double(r.stddev) << ',' << r.n_alive << '\n';
  }
  return os.str();
}

}  // namespace nova
