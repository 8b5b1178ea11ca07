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

#include "nova/experiment.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "nova/clifford.hpp"

#ifndef NOVA_DATA_DIR
#define NOVA_DATA_DIR "data"
#endif

namespace nova {

using nlohmann::json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kNova: return "nova";
    case Algorithm::kAdaptVqe: return "adapt_vqe";
    case Algorithm::kHybrid: return "hybrid";
    case Algorithm::kFqa: return "fqa";
    case Algorithm::kRandomPool: return "random_pool";
    case Algorithm::kRandom2Design: return "random_2design";
    case Algorithm::kAcse: return "acse";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view tag) {
  for (auto a : {Algorithm::kNova, Algorithm::kAdaptVqe, Algorithm::kHybrid, Algorithm::kFqa,
                 Algorithm::kRandomPool, Algorithm::kRandom2Design, Algorithm::kAcse}) {
    if (to_string(a) == tag) return a;
  }
  throw ConfigError("unknown algorithm '" + std::string(tag) + "'");
}

std::filesystem::path default_hamiltonian_path() {
  return std::filesystem::path(NOVA_DATA_DIR) / "h4_sto3g_1.5A.ham";
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

// Reads keys from one JSON object and rejects any it did not consume.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + "expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& raw(const char* key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const char* key, double def) {
    if (!has(key)) return def;
    const auto& v = raw(key);
    if (!v.is_number()) throw ConfigError(where(key) + "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const char* key, std::int64_t def) {
    if (!has(key)) return def;
    const auto& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + "expected an integer");
    return v.get<std::int64_t>();
  }

  bool boolean(const char* key, bool def) {
    if (!has(key)) return def;
    const auto& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + "expected true or false");
    return v.get<bool>();
  }

  std::string string(const char* key, const std::string& def) {
    if (!has(key)) return def;
    const auto& v = raw(key);
    if (!v.is_string()) throw ConfigError(where(key) + "expected a string");
    return v.get<std::string>();
  }

  Section child(const char* key) {
    static const json kEmpty = json::object();
    if (!has(key)) return Section(kEmpty, path_ + key + ".");
    return Section(raw(key), path_ + key + ".");
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) throw ConfigError("unknown config key '" + path_ + k + "'");
    }
  }

  std::string where(const char* key = "") const {
    return "config '" + path_ + key + "': ";
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  Section top(j, "");
  if (top.has("_echo")) top.raw("_echo");
  require(top.has("algorithm"), "config: 'algorithm' is required");
  c.algorithm = parse_algorithm(top.string("algorithm", ""));
  c.hamiltonian = top.string("hamiltonian", default_hamiltonian_path().string());
  c.pool = top.string("pool", c.pool);
  require(c.pool == "spin_adapted" || c.pool == "qubit",
          "config 'pool': expected spin_adapted or qubit");
  c.initial_state = top.string("initial_state", c.initial_state);
  require(c.initial_state == "hartree_fock" || c.initial_state == "random_2design",
          "config 'initial_state': expected hartree_fock or random_2design");
  const auto seed = top.integer("seed", 1);
  require(seed >= 0, "config 'seed': must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);

  {
    auto g = top.child("gamma");
    const auto strategy = g.string("strategy", "second_derivative");
    const double value = g.number("value", 1.0);
    std::optional<double> fallback;
    if (g.has("fallback") && !g.raw("fallback").is_null()) fallback = g.number("fallback", 0.0);
    const double eps = g.number("curvature_epsilon", 1e-8);
    try {
      if (strategy == "constant") c.gamma = GammaStrategy::constant(value);
      else if (strategy == "lower_bound") c.gamma = GammaStrategy::lower_bound();
      else if (strategy == "second_derivative") c.gamma = GammaStrategy::second_derivative(fallback);
      else throw ConfigError("config 'gamma.strategy': unknown strategy '" + strategy + "'");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config 'gamma': ") + e.what());
    }
    c.gamma.gamma = value;
    c.gamma.curvature_epsilon = eps;
    g.finish();
  }
  {
    auto s = top.child("stopping");
    c.stop.max_operators = static_cast<int>(s.integer("max_operators", 200));
    c.stop.gradient_tolerance = s.number("gradient_tolerance", 1e-6);
    c.stop.energy_error_target = s.number("energy_error_target", 0.0);
    c.stop.max_fevals = s.integer("max_fevals", 0);
    require(c.stop.max_operators >= 0, "config 'stopping.max_operators': must be >= 0");
    s.finish();
  }
  {
    auto s = top.child("noise");
    c.noise.rotation.sigma = s.number("rotation_sigma", 0.0);
    c.noise.gradient.sigma = s.number("gradient_sigma", 0.0);
    require(c.noise.rotation.sigma >= 0.0 && c.noise.gradient.sigma >= 0.0,
            "config 'noise': sigmas must be >= 0");
    s.finish();
  }
  {
    auto s = top.child("vqe");
    c.bfgs.gradient_tolerance = s.number("gradient_tolerance", 1e-6);
    c.bfgs.max_iterations = static_cast<int>(s.integer("max_iterations", 1000));
    c.recycle_hessian = s.boolean("recycle_hessian", true);
    c.count_gradient_per_parameter = s.boolean("count_gradient_per_parameter", false);
    s.finish();
  }
  {
    auto s = top.child("hybrid");
    c.switch_iteration = static_cast<int>(s.integer("switch_iteration", 5));
    require(c.switch_iteration >= 0, "config 'hybrid.switch_iteration': must be >= 0");
    s.finish();
  }
  {
    auto s = top.child("fqa");
    if (s.has("delta_t")) {
      const auto& v = s.raw("delta_t");
      if (v.is_string() && v.get<std::string>() == "lower_bound") {
        c.fqa.delta_t.reset();
      } else if (v.is_number() && v.get<double>() > 0.0) {
        c.fqa.delta_t = v.get<double>();
      } else {
        throw ConfigError("config 'fqa.delta_t': expected \"lower_bound\" or a positive number");
      }
    }
    c.fqa.max_layers = static_cast<int>(s.integer("max_layers", 200));
    c.fqa.trotter_steps = static_cast<int>(s.integer("trotter_steps", 1));
    require(c.fqa.trotter_steps >= 1, "config 'fqa.trotter_steps': must be >= 1");
    s.finish();
  }
  {
    auto s = top.child("acse");
    const auto ordering = s.string("ordering", "pool_order");
    if (ordering == "pool_order") c.acse.ordering = AcseConfig::Ordering::kPoolOrder;
    else if (ordering == "gradient_descending")
      c.acse.ordering = AcseConfig::Ordering::kGradientDescending;
    else throw ConfigError("config 'acse.ordering': unknown ordering '" + ordering + "'");
    if (s.has("epsilon")) {
      const auto& v = s.raw("epsilon");
      if (v.is_string() && v.get<std::string>() == "optimize") {
        c.acse.epsilon.reset();
      } else if (v.is_number() && v.get<double>() > 0.0) {
        c.acse.epsilon = v.get<double>();
      } else {
        throw ConfigError("config 'acse.epsilon': expected \"optimize\" or a positive number");
      }
    }
    c.acse.epsilon_max = s.number("epsilon_max", 2.0);
    c.acse.reoptimize_epsilon = s.boolean("reoptimize_epsilon", true);
    c.acse.line_search_evaluations = static_cast<int>(s.integer("line_search_evaluations", 24));
    c.acse.max_iterations = static_cast<int>(s.integer("max_iterations", 100));
    s.finish();
  }
  {
    auto s = top.child("random");
    c.rejection_threshold = s.number("rejection_threshold", 1e-10);
    c.max_rejections = static_cast<int>(s.integer("max_rejections", 2000));
    c.fixed_operator = s.string("fixed_operator", "");
    s.finish();
  }
  {
    auto s = top.child("ensemble");
    c.realizations = static_cast<int>(s.integer("realizations", 1));
    const auto threads = s.integer("threads", 0);
    require(c.realizations >= 1, "config 'ensemble.realizations': must be >= 1");
    require(threads >= 0, "config 'ensemble.threads': must be >= 0");
    c.threads = static_cast<unsigned>(threads);
    s.finish();
  }
  {
    auto s = top.child("output");
    c.output_dir = s.string("dir", "");
    c.name = s.string("name", to_string(c.algorithm));
    require(!c.name.empty() && c.name.find('/') == std::string::npos,
            "config 'output.name': must be a plain file stem");
    s.finish();
  }
  top.finish();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["algorithm"] = to_string(c.algorithm);
  j["hamiltonian"] = c.hamiltonian.string();
  j["pool"] = c.pool;
  j["initial_state"] = c.initial_state;
  j["seed"] = c.seed;
  j["gamma"] = {{"strategy", to_string(c.gamma.kind)},
                {"value", c.gamma.gamma},
                {"fallback", c.gamma.fallback_gamma ? json(*c.gamma.fallback_gamma) : json()},
                {"curvature_epsilon", c.gamma.curvature_epsilon}};
  j["stopping"] = {{"max_operators", c.stop.max_operators},
                   {"gradient_tolerance", c.stop.gradient_tolerance},
                   {"energy_error_target", c.stop.energy_error_target},
                   {"max_fevals", c.stop.max_fevals}};
  j["noise"] = {{"rotation_sigma", c.noise.rotation.sigma},
                {"gradient_sigma", c.noise.gradient.sigma}};
  j["vqe"] = {{"gradient_tolerance", c.bfgs.gradient_tolerance},
              {"max_iterations", c.bfgs.max_iterations},
              {"recycle_hessian", c.recycle_hessian},
              {"count_gradient_per_parameter", c.count_gradient_per_parameter}};
  j["hybrid"] = {{"switch_iteration", c.switch_iteration}};
  j["fqa"] = {{"delta_t", c.fqa.delta_t ? json(*c.fqa.delta_t) : json("lower_bound")},
              {"max_layers", c.fqa.max_layers},
              {"trotter_steps", c.fqa.trotter_steps}};
  j["acse"] = {{"ordering", to_string(c.acse.ordering)},
               {"epsilon", c.acse.epsilon ? json(*c.acse.epsilon) : json("optimize")},
               {"epsilon_max", c.acse.epsilon_max},
               {"reoptimize_epsilon", c.acse.reoptimize_epsilon},
               {"line_search_evaluations", c.acse.line_search_evaluations},
               {"max_iterations", c.acse.max_iterations}};
  j["random"] = {{"rejection_threshold", c.rejection_threshold},
                 {"max_rejections", c.max_rejections},
                 {"fixed_operator", c.fixed_operator}};
  j["ensemble"] = {{"realizations", c.realizations}, {"threads", c.threads}};
  j["output"] = {{"dir", c.output_dir.string()}, {"name", c.name}};
  return j;
}

// ---------------------------------------------------------------------------
// Running

ExperimentContext::ExperimentContext(const std::filesystem::path& hamiltonian)
    : file_(load_hamiltonian(hamiltonian)),
      problem_(std::make_unique<Problem>(file_.to_sum())) {}

const OperatorPool& ExperimentContext::pool(const std::string& kind) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = pools_[kind];
  if (!slot) {
    if (kind == "spin_adapted") {
      if (file_.n_qubits % 2 != 0) throw ConfigError("spin-adapted pool needs an even register");
      slot = std::make_unique<OperatorPool>(
          build_spin_adapted_pool(file_.n_qubits / 2, file_.ordering));
    } else if (kind == "qubit") {
      slot = std::make_unique<OperatorPool>(build_qubit_pool(file_.n_qubits));
    } else {
      throw ConfigError("unknown pool '" + kind + "'");
    }
  }
  return *slot;
}

StateVector ExperimentContext::hartree_fock() const {
  return hartree_fock_state(file_.n_qubits, file_.n_electrons, file_.ordering);
}

namespace {

const PoolOperator& fixed_operator(const ExperimentConfig& c, ExperimentContext& ctx) {
  const auto& pool = ctx.pool(c.fixed_operator.empty() ? std::string("spin_adapted") : c.pool);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& op = pool.op(i);
    if (c.fixed_operator.empty() ? op.kind != PoolKind::kSpinAdaptedSingle
                                 : op.label == c.fixed_operator) {
      return op;
    }
  }
  throw ConfigError("fixed operator '" + c.fixed_operator + "' not found in pool");
}

}  // namespace

RunTrace run_single(const ExperimentConfig& c, ExperimentContext& ctx, std::uint64_t seed) {
  const Problem& problem = ctx.problem();
  const auto& file = ctx.file();
  const StateVector initial =
      c.initial_state == "hartree_fock"
          ? ctx.hartree_fock()
          : random_2design_state(file.n_qubits, seed,
                                 hartree_fock_index(file.n_qubits, file.n_electrons,
                                                    file.ordering));
  VqeOptions vqe;
  vqe.stop = c.stop;
  vqe.noise = c.noise;
  vqe.seed = seed;
  vqe.bfgs = c.bfgs;
  vqe.recycle_hessian = c.recycle_hessian;
  vqe.count_gradient_per_parameter = c.count_gradient_per_parameter;
  NovaOptions nova{c.gamma, c.stop, c.noise, seed};
  RandomOptions rnd{c.gamma, c.stop, c.noise, seed, c.rejection_threshold, c.max_rejections};

  RunTrace trace;
  switch (c.algorithm) {
    case Algorithm::kNova:
      trace = nova_run(problem, ctx.pool(c.pool), initial, nova);
      break;
    case Algorithm::kAdaptVqe:
      trace = adapt_vqe_run(problem, ctx.pool(c.pool), initial, vqe);
      break;
    case Algorithm::kHybrid:
      trace = hybrid_run(problem, ctx.pool(c.pool), initial, {nova, vqe, c.switch_iteration});
      break;
    case Algorithm::kFqa: {
      if (!file.fully_tagged()) {
        throw ConfigError("fqa needs a Hamiltonian with body tags on every term");
      }
      const auto [h1, h2] = split_hamiltonian(file);
      FqaConfig fqa = c.fqa;
      fqa.energy_error_target = c.stop.energy_error_target;
      trace = fqa_run(problem, h1, h2, initial, fqa);
      trace.notes.push_back("reconstructed split: body tags from the Hamiltonian file");
      break;
    }
    case Algorithm::kRandomPool:
      trace = random_pool_run(problem, ctx.pool(c.pool), initial, rnd);
      break;
    case Algorithm::kRandom2Design:
      trace = random_2design_run(problem, fixed_operator(c, ctx), initial, rnd);
      break;
    case Algorithm::kAcse: {
      AcseConfig acse = c.acse;
      acse.gradient_tolerance = c.stop.gradient_tolerance;
      acse.energy_error_target = c.stop.energy_error_target;
      trace = acse_run(problem, ctx.pool(c.pool), initial, acse);
      break;
    }
  }
  trace.algorithm = to_string(c.algorithm);
  trace.seed = seed;
  trace.config = to_json(c);
  return trace;
}

std::string RunSummary::line() const {
  std::ostringstream os;
  os << name << ": final_energy_error=" << format_double(final_energy_error)
     << " operators=" << n_ops << " total_fevals=" << total_fevals
     << " chemical_accuracy=" << (chemical_accuracy ? "yes" : "no") << " status=" << status
     << " wall_time=" << format_double(std::round(wall_seconds * 1000.0) / 1000.0) << "s";
  if (realizations > 1) os << " realizations=" << realizations << " failed=" << failed;
  return os.str();
}

namespace {

std::filesystem::path resolve_output_dir(const ExperimentConfig& c) {
  if (!c.output_dir.empty()) return c.output_dir;
  if (const char* env = std::getenv("NOVA_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "nova_output";
}

std::string trace_csv(const RunTrace& t) {
  std::ostringstream os;
  t.write_csv(os);
  return os.str();
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& c, ExperimentContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const auto dir = resolve_output_dir(c);
  RunSummary s;
  s.name = c.name;
  s.realizations = c.realizations;
  json echo = to_json(c);
  json meta;
  meta["version"] = NOVA_VERSION;
  meta["hamiltonian_terms"] = ctx.file().terms.size();
  meta["hamiltonian_checksum"] = ctx.file().checksum();
  meta["ground_energy"] = ctx.problem().ground_energy;
  meta["output_dir"] = dir.string();
  meta["generator_normalization"] = "unit spectral norm";

  if (c.realizations == 1) {
    const auto trace = run_single(c, ctx, c.seed);
    const auto csv = dir / (c.name + ".csv");
    write_file_atomic(csv, trace_csv(trace));
    s.files.push_back(csv);
    s.final_energy_error = trace.last().energy_error;
    s.n_ops = trace.last().n_ops;
    s.total_fevals = trace.total_fevals;
    s.status = to_string(trace.status);
    meta["resolved_seed"] = c.seed;
    meta["result"] = trace.metadata();
  } else {
    const auto result = ensemble_run(
        [&](std::uint64_t seed) { return run_single(c, ctx, seed); }, c.realizations, c.seed,
        c.threads);
    if (result.traces.empty()) {
      throw std::runtime_error("every realization failed: " + result.failure_messages.front());
    }
    json runs = json::array();
    double err = 0.0, ops = 0.0, fevals = 0.0;
    for (const auto& t : result.traces) {
      const auto csv = dir / (c.name + "_seed" + std::to_string(t.seed) + ".csv");
      write_file_atomic(csv, trace_csv(t));
      s.files.push_back(csv);
      runs.push_back(t.metadata());
      err += t.last().energy_error;
      ops += t.last().n_ops;
      fevals += static_cast<double>(t.total_fevals);
    }
    const auto n = static_cast<double>(result.traces.size());
    const auto agg = dir / (c.name + ".csv");
    write_file_atomic(agg, aggregate_csv(result.aggregate));
    s.files.insert(s.files.begin(), agg);
    s.final_energy_error = result.aggregate.back().mean;
    s.n_ops = static_cast<int>(std::lround(ops / n));
    s.total_fevals = std::lround(fevals / n);
    s.status = "ensemble";
    s.failed = static_cast<int>(result.failed_seeds.size());
    meta["seeds"] = {{"first", c.seed}, {"count", c.realizations}};
    meta["failed_seeds"] = result.failed_seeds;
    meta["failure_messages"] = result.failure_messages;
    meta["padding"] = "shorter realizations carry their last energy error forward";
    meta["runs"] = runs;
  }
  s.chemical_accuracy = s.final_energy_error <= kChemicalAccuracy;
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  meta["summary"] = s.line();
  echo["_echo"] = meta;
  const auto json_path = dir / (c.name + ".json");
  write_file_atomic(json_path, echo.dump(2) + "\n");
  s.files.push_back(json_path);
  return s;
}

RunSummary run_experiment(const ExperimentConfig& c) {
  ExperimentContext ctx(c.hamiltonian);
  return run_experiment(c, ctx);
}

// ---------------------------------------------------------------------------
// Figures

const std::vector<std::string> kFigureIds = {"fig1", "fig2", "fig3", "fig4",
                                             "fig5", "fig6", "fig7"};

namespace {

// ADAPT-VQE ensembles re-optimize every parameter each iteration; this cap
// keeps a 100-realization ensemble within desk-scale runtime.
constexpr int kEnsembleAdaptCap = 60;

ExperimentConfig base(Algorithm a, const std::string& name, const std::filesystem::path& dir,
                      const std::filesystem::path& hamiltonian) {
  ExperimentConfig c;
  c.algorithm = a;
  c.name = name;
  c.output_dir = dir;
  c.hamiltonian = hamiltonian;
  return c;
}

}  // namespace

std::vector<ExperimentConfig> figure_configs(const std::string& id,
                                             const std::filesystem::path& dir,
                                             const FigureOptions& o) {
  std::vector<ExperimentConfig> out;
  const auto& h = o.hamiltonian;
  const auto add = [&](ExperimentConfig c) { out.push_back(std::move(c)); };
  const auto ensemble = [&](ExperimentConfig c) {
    c.realizations = o.realizations;
    c.threads = o.threads;
    return c;
  };
  if (id == "fig1") {
    auto c = base(Algorithm::kNova, "nova_constant_gamma", dir, h);
    c.gamma = GammaStrategy::constant(1.0);
    add(c);
    add(ensemble(base(Algorithm::kRandomPool, "random_pool", dir, h)));
    c = base(Algorithm::kNova, "nova_lower_bound", dir, h);
    c.gamma = GammaStrategy::lower_bound();
    add(c);
    add(base(Algorithm::kNova, "nova_second_derivative", dir, h));
    add(base(Algorithm::kAdaptVqe, "adapt_vqe", dir, h));
  } else if (id == "fig2") {
    if (!o.stretched_hamiltonian) return out;
    const auto& h3 = *o.stretched_hamiltonian;
    auto c = base(Algorithm::kAdaptVqe, "qubit_adapt_vqe", dir, h3);
    c.pool = "qubit";
    add(c);
    c = base(Algorithm::kNova, "nova_constant_gamma", dir, h3);
    c.pool = "qubit";
    c.gamma = GammaStrategy::constant(0.75);
    add(c);
    c = base(Algorithm::kNova, "nova_second_derivative", dir, h3);
    c.pool = "qubit";
    add(c);
  } else if (id == "fig3") {
    for (auto [a, name] : {std::pair{Algorithm::kAdaptVqe, "adapt_vqe"},
                           std::pair{Algorithm::kNova, "nova_second_derivative"},
                           std::pair{Algorithm::kRandomPool, "random_pool"},
                           std::pair{Algorithm::kRandom2Design, "random_2design"}}) {
      auto c = ensemble(base(a, name, dir, h));
      c.initial_state = "random_2design";
      if (a == Algorithm::kAdaptVqe) c.stop.max_operators = kEnsembleAdaptCap;
      add(c);
    }
  } else if (id == "fig4") {
    add(base(Algorithm::kNova, "nova_second_derivative", dir, h));
    auto c = base(Algorithm::kFqa, "fqa_lower_bound", dir, h);
    add(c);
    c = base(Algorithm::kFqa, "fqa_dt1", dir, h);
    c.fqa.delta_t = 1.0;
    add(c);
    c = base(Algorithm::kFqa, "fqa_dt2", dir, h);
    c.fqa.delta_t = 2.0;
    add(c);
  } else if (id == "fig5") {
    add(base(Algorithm::kNova, "nova_second_derivative", dir, h));
    auto c = base(Algorithm::kAcse, "acse_pool_order", dir, h);
    add(c);
    c = base(Algorithm::kAcse, "acse_gradient_descending", dir, h);
    c.acse.ordering = AcseConfig::Ordering::kGradientDescending;
    add(c);
  } else if (id == "fig6") {
    for (auto [kind, sigma] : {std::pair{"rotation", 0.01}, std::pair{"rotation", 0.001},
                               std::pair{"gradient", 0.01}, std::pair{"gradient", 0.001}}) {
      const std::string suffix = std::string("_") + kind + "_" + format_double(sigma);
      for (auto [a, name] : {std::pair{Algorithm::kAdaptVqe, "adapt_vqe"},
                             std::pair{Algorithm::kNova, "nova_second_derivative"},
                             std::pair{Algorithm::kRandomPool, "random_pool"}}) {
        auto c = ensemble(base(a, name + suffix, dir, h));
        (std::string(kind) == "rotation" ? c.noise.rotation.sigma : c.noise.gradient.sigma) =
            sigma;
        if (a == Algorithm::kAdaptVqe) c.stop.max_operators = kEnsembleAdaptCap;
        add(c);
      }
    }
  } else if (id == "fig7") {
    add(base(Algorithm::kNova, "nova_second_derivative", dir, h));
    add(base(Algorithm::kAdaptVqe, "adapt_vqe", dir, h));
    for (int k = 5; k <= 45; k += 5) {
      auto c = base(Algorithm::kHybrid, "hybrid_switch" + std::to_string(k), dir, h);
      c.switch_iteration = k;
      add(c);
    }
  } else {
    throw ConfigError("unknown figure id '" + id + "'");
  }
  return out;
}

std::vector<RunSummary> figure_series(const std::string& id,
                                      const std::filesystem::path& dir,
                                      const FigureOptions& o, std::string* skipped) {
  const auto configs = figure_configs(id, dir, o);
  if (configs.empty()) {
    if (skipped) {
      *skipped = id + " skipped: needs a user-supplied stretched-geometry Hamiltonian "
                      "(--hamiltonian3)";
    }
    return {};
  }
  std::map<std::string, std::unique_ptr<ExperimentContext>> contexts;
  std::vector<RunSummary> out;
  json manifest;
  manifest["figure"] = id;
  manifest["version"] = NOVA_VERSION;
  manifest["curves"] = json::array();
  for (const auto& c : configs) {
    auto& ctx = contexts[c.hamiltonian.string()];
    if (!ctx) ctx = std::make_unique<ExperimentContext>(c.hamiltonian);
    auto s = run_experiment(c, *ctx);
    manifest["curves"].push_back({{"name", c.name},
                                  {"csv", c.name + ".csv"},
                                  {"config", c.name + ".json"},
                                  {"ensemble", c.realizations > 1},
                                  {"x", c.realizations > 1 ? json::array({"iteration"})
                                                           : json::array({"n_ops", "fevals"})},
                                  {"y", c.realizations > 1 ? "mean_energy_error"
                                                           : "energy_error"}});
    out.push_back(std::move(s));
  }
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return out;
}

}  // namespace nova
