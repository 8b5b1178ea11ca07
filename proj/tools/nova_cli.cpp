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

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nova/experiment.hpp"
#include "nova/fermion.hpp"
#include "nova/hamiltonian_io.hpp"
#include "nova/trace.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigFault = 2, kRuntimeFault = 3 };

int cmd_run(const std::string& config_path) {
  const auto config = nova::load_config(config_path);
  const auto summary = nova::run_experiment(config);
  std::cout << summary.line() << "\n";
  for (const auto& f : summary.files) std::cout << "  wrote " << f.string() << "\n";
  return kOk;
}

int cmd_figure(const std::string& id, std::filesystem::path out,
               const nova::FigureOptions& options) {
  if (out.empty()) {
    const char* env = std::getenv("NOVA_OUTPUT_DIR");
    out = std::filesystem::path(env && *env ? env : "nova_output") / id;
  }
  std::string skipped;
  const auto summaries = nova::figure_series(id, out, options, &skipped);
  if (!skipped.empty()) {
    std::cout << "notice: " << skipped << "\n";
    return kOk;
  }
  for (const auto& s : summaries) std::cout << s.line() << "\n";
  std::cout << "wrote " << (out / "manifest.json").string() << "\n";
  return kOk;
}

int cmd_diag(const std::string& path) {
  const auto file = nova::load_hamiltonian(path);
  const nova::Problem problem(file.to_sum());
  std::cout << std::setprecision(12);
  std::cout << "terms: " << file.terms.size() << "\n";
  std::cout << "checksum: " << file.checksum() << "\n";
  std::cout << "n_qubits: " << file.n_qubits << "  n_electrons: " << file.n_electrons << "\n";
  std::cout << "spectral_norm: " << problem.h_norm << "\n";
  std::cout << "exact_ground_energy: " << problem.ground_energy << "\n";
  return kOk;
}

int cmd_pool(const std::string& kind, const std::string& hamiltonian, const std::string& out) {
  const auto file = nova::load_hamiltonian(hamiltonian);
  std::vector<nova::PoolOperator> pool;
  if (kind == "spin_adapted") {
    pool = nova::build_spin_adapted_pool(file.n_qubits / 2, file.ordering);
  } else {
    pool = nova::build_qubit_pool(file.n_qubits);
  }
  std::ostringstream os;
  nova::dump_pool(os, pool);
  nova::write_file_atomic(out, os.str());
  std::cout << kind << " pool: " << pool.size() << " operators written to " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-statevector adaptive ground-state preparation experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  run->add_option("--config", config_path, "Experiment config")->required()->check(
      CLI::ExistingFile);

  std::string figure_id;
  std::string figure_out;
  std::string stretched;
  nova::FigureOptions figure_options;
  std::string figure_hamiltonian = figure_options.hamiltonian.string();
  auto* figure = app.add_subcommand("figure", "Emit every data series of one figure");
  figure->add_option("id", figure_id, "Figure id")->required()->check(
      CLI::IsMember(nova::kFigureIds));
  figure->add_option("--out", figure_out, "Output directory");
  figure->add_option("--hamiltonian", figure_hamiltonian, "Hamiltonian file")
      ->check(CLI::ExistingFile);
  figure->add_option("--hamiltonian3", stretched, "Stretched-geometry Hamiltonian (fig2)")
      ->check(CLI::ExistingFile);
  figure->add_option("--realizations", figure_options.realizations, "Ensemble size")
      ->check(CLI::PositiveNumber);
  figure->add_option("--threads", figure_options.threads, "Worker threads (0 = hardware)");

  std::string diag_path;
  auto* diag = app.add_subcommand("diag", "Print the exact ground energy of a Hamiltonian");
  diag->add_option("--hamiltonian", diag_path, "Hamiltonian file")->required()->check(
      CLI::ExistingFile);

  std::string pool_kind, pool_hamiltonian, pool_out;
  auto* pool = app.add_subcommand("pool", "Write an operator pool to a file");
  pool->add_option("--kind", pool_kind, "Pool kind")->required()->check(
      CLI::IsMember({"spin_adapted", "qubit"}));
  pool->add_option("--hamiltonian", pool_hamiltonian, "Hamiltonian file")->required()->check(
      CLI::ExistingFile);
  pool->add_option("--out", pool_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFault;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*figure) {
      figure_options.hamiltonian = figure_hamiltonian;
      if (!stretched.empty()) figure_options.stretched_hamiltonian = stretched;
      return cmd_figure(figure_id, figure_out, figure_options);
    }
    if (*diag) return cmd_diag(diag_path);
    if (*pool) return cmd_pool(pool_kind, pool_hamiltonian, pool_out);
  } catch (const nova::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigFault;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFault;
  }
  return kOk;
}
