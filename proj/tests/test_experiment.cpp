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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nova/experiment.hpp"
#include "nova/noise.hpp"

namespace nova {
namespace {

using nlohmann::json;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("nova_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

void expect_config_error(const json& j, const std::string& fragment) {
  try {
    parse_config(j);
    FAIL() << "expected ConfigError for " << j.dump();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Config, Defaults) {
  const auto c = parse_config({{"algorithm", "nova"}});
  EXPECT_EQ(c.algorithm, Algorithm::kNova);
  EXPECT_EQ(c.gamma.kind, GammaStrategy::Kind::kSecondDerivative);
  EXPECT_EQ(c.stop.max_operators, 200);
  EXPECT_EQ(c.pool, "spin_adapted");
  EXPECT_EQ(c.realizations, 1);
  EXPECT_EQ(c.name, "nova");
}

TEST(Config, SchemaViolations) {
  expect_config_error({{"algorithm", "bogus"}}, "unknown algorithm");
  expect_config_error(json::object(), "algorithm");
  expect_config_error({{"algorithm", "nova"}, {"gama", 1}}, "unknown config key 'gama'");
  expect_config_error({{"algorithm", "nova"}, {"gamma", {{"valu", 1}}}},
                      "unknown config key 'gamma.valu'");
  expect_config_error({{"algorithm", "nova"}, {"stopping", {{"max_operators", "many"}}}},
                      "stopping.max_operators");
  expect_config_error({{"algorithm", "nova"}, {"gamma", {{"strategy", "constant"}, {"value", -1}}}},
                      "gamma");
  expect_config_error({{"algorithm", "fqa"}, {"fqa", {{"delta_t", "big"}}}}, "fqa.delta_t");
  expect_config_error({{"algorithm", "nova"}, {"pool", "fermion"}}, "pool");
  expect_config_error({{"algorithm", "nova"}, {"seed", -3}}, "seed");
}

TEST(Config, EchoRoundTrip) {
  json j = {{"algorithm", "acse"},
            {"seed", 17},
            {"acse", {{"ordering", "gradient_descending"}, {"epsilon", 0.2}}},
            {"noise", {{"rotation_sigma", 0.01}}},
            {"gamma", {{"strategy", "constant"}, {"value", 0.75}}},
            {"fqa", {{"delta_t", 2.0}}}};
  const auto c = parse_config(j);
  auto echo = to_json(c);
  EXPECT_EQ(to_json(parse_config(echo)), echo);
  echo["_echo"] = {{"anything", 1}};
  EXPECT_NO_THROW(parse_config(echo));
}

TEST(Experiment, WritesTraceAndEchoAndReproducesFromEcho) {
  const auto dir = scratch("echo");
  auto c = parse_config({{"algorithm", "random_pool"},
                         {"seed", 5},
                         {"stopping", {{"max_operators", 6}}},
                         {"output", {{"dir", dir.string()}, {"name", "rp"}}}});
  const auto s = run_experiment(c);
  EXPECT_EQ(s.n_ops, 6);
  EXPECT_NE(s.line().find("total_fevals="), std::string::npos);
  const auto first = slurp(dir / "rp.csv");
  const auto echo = json::parse(slurp(dir / "rp.json"));
  EXPECT_EQ(echo.at("_echo").at("resolved_seed"), 5);
  EXPECT_EQ(echo.at("_echo").at("hamiltonian_terms"), 185);
  EXPECT_TRUE(echo.at("_echo").contains("version"));
  run_experiment(parse_config(echo));
  EXPECT_EQ(slurp(dir / "rp.csv"), first);
  std::filesystem::remove_all(dir);
}

TEST(Experiment, OutputDirFromEnvironment) {
  const auto dir = scratch("env");
  ::setenv("NOVA_OUTPUT_DIR", dir.c_str(), 1);
  const auto c = parse_config({{"algorithm", "fqa"}, {"fqa", {{"max_layers", 3}}}});
  const auto s = run_experiment(c);
  ::unsetenv("NOVA_OUTPUT_DIR");
  EXPECT_TRUE(std::filesystem::exists(dir / "fqa.csv"));
  EXPECT_EQ(s.status, "max_iterations");
  std::filesystem::remove_all(dir);
}

TEST(Experiment, EnsembleWritesAggregateAndSeeds) {
  const auto dir = scratch("ensemble");
  const auto c = parse_config({{"algorithm", "nova"},
                               {"seed", 100},
                               {"noise", {{"rotation_sigma", 0.01}}},
                               {"stopping", {{"max_operators", 4}}},
                               {"ensemble", {{"realizations", 3}, {"threads", 2}}},
                               {"output", {{"dir", dir.string()}, {"name", "ens"}}}});
  const auto s = run_experiment(c);
  EXPECT_EQ(s.realizations, 3);
  EXPECT_EQ(s.failed, 0);
  for (int seed : {100, 101, 102})
    EXPECT_TRUE(std::filesystem::exists(dir / ("ens_seed" + std::to_string(seed) + ".csv")));
  const auto agg = slurp(dir / "ens.csv");
  EXPECT_EQ(agg.substr(0, agg.find('\n')),
            "iteration,mean_energy_error,median,q25,q75,stddev,n_alive");
  std::filesystem::remove_all(dir);
}

TEST(Experiment, EmittedCsvIsMonotoneInX) {
  const auto dir = scratch("monotone");
  for (const std::string a : {"nova", "adapt_vqe", "acse", "fqa", "random_2design", "hybrid"}) {
    json j = {{"algorithm", a},
              {"stopping", {{"max_operators", 6}}},
              {"acse", {{"max_iterations", 3}}},
              {"fqa", {{"max_layers", 6}}},
              {"output", {{"dir", dir.string()}}}};
    run_experiment(parse_config(j));
    std::ifstream in(dir / (a + ".csv"));
    const auto rows = read_trace_csv(in);
    ASSERT_GT(rows.size(), 1u) << a;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      EXPECT_GT(rows[k].fevals, rows[k - 1].fevals) << a;
      EXPECT_GE(rows[k].n_ops, rows[k - 1].n_ops) << a;
      EXPECT_EQ(rows[k].iter, rows[k - 1].iter + 1) << a;
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Figures, CurveCounts) {
  const FigureOptions o;
  const std::filesystem::path dir = "unused";
  EXPECT_EQ(figure_configs("fig1", dir, o).size(), 5u);
  EXPECT_EQ(figure_configs("fig2", dir, o).size(), 0u);
  EXPECT_EQ(figure_configs("fig3", dir, o).size(), 4u);
  EXPECT_EQ(figure_configs("fig4", dir, o).size(), 4u);
  EXPECT_EQ(figure_configs("fig5", dir, o).size(), 3u);
  EXPECT_EQ(figure_configs("fig6", dir, o).size(), 12u);
  EXPECT_EQ(figure_configs("fig7", dir, o).size(), 11u);
  EXPECT_THROW(figure_configs("fig8", dir, o), ConfigError);
  FigureOptions with3 = o;
  with3.stretched_hamiltonian = default_hamiltonian_path();
  EXPECT_EQ(figure_configs("fig2", dir, with3).size(), 3u);
}

TEST(Figures, MissingStretchedFileIsSkippedWithNotice) {
  std::string notice;
  const auto out = figure_series("fig2", scratch("fig2"), {}, &notice);
  EXPECT_TRUE(out.empty());
  EXPECT_NE(notice.find("skipped"), std::string::npos);
}

TEST(Figures, ConfigsSurviveEchoRoundTrip) {
  for (const auto& id : kFigureIds) {
    FigureOptions o;
    o.stretched_hamiltonian = default_hamiltonian_path();
    for (const auto& c : figure_configs(id, "out", o)) {
      EXPECT_EQ(to_json(parse_config(to_json(c))), to_json(c)) << id << " " << c.name;
    }
  }
}

}  // namespace
}  // namespace nova
