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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nova/fermion.hpp"
#include "nova/pauli.hpp"

namespace nova {

/// Fermionic origin of a Hamiltonian term.
enum class BodyTag : int { kUntagged = -1, kIdentity = 0, kOneBody = 1, kTwoBody = 2 };

struct HamiltonianTerm {
  double coefficient;
  PauliString word;
  BodyTag tag = BodyTag::kUntagged;
};

/**
 * Text Hamiltonian: `key value` header lines, the line `terms`, then one
 * `coefficient WORD [tag]` line per term. `#` starts a comment.
 */
struct HamiltonianFile {
  int n_qubits = 0;
  int n_electrons = 0;
  OrbitalOrdering ordering = OrbitalOrdering::kInterleaved;
  /// Constant added on top of any identity term.
  double energy_offset = 0.0;
  std::vector<HamiltonianTerm> terms;

  PauliSum to_sum() const;
  bool fully_tagged() const;
  /// FNV-1a over the canonical serialization.
  std::uint64_t checksum() const;
};

HamiltonianFile parse_hamiltonian(std::istream& in,
                                  const std::string& source = "<stream>");
HamiltonianFile load_hamiltonian(const std::filesystem::path& path);
void serialize_hamiltonian(std::ostream& out, const HamiltonianFile& file);

/// (H1, H2): identity and one-body terms, then two-body terms.
std::pair<PauliSum, PauliSum> split_hamiltonian(const HamiltonianFile& file);

}  // namespace nova
