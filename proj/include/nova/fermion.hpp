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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nova/pauli.hpp"
#include "nova/statevector.hpp"

namespace nova {

/// How spin-orbitals are laid out on qubits.
enum class OrbitalOrdering {
  kInterleaved,  // (0a, 0b, 1a, 1b, ...)
  kBlocked,      // (0a, 1a, ..., 0b, 1b, ...)
};

OrbitalOrdering parse_orbital_ordering(std::string_view tag);
std::string to_string(OrbitalOrdering ordering);

enum class Spin { kAlpha = 0, kBeta = 1 };

/// Qubit hosting (spatial, spin).
int spin_orbital(int spatial, Spin spin, int n_spatial, OrbitalOrdering ordering);

/// coefficient * a†_{c0} a†_{c1} ... a_{a0} a_{a1} ..., in list order.
struct FermionTerm {
  std::vector<int> creation;
  std::vector<int> annihilation;
  Complex coefficient{1.0, 0.0};

  /// Both lists sorted ascending with the permutation sign folded into the
  /// coefficient; nullopt when an index repeats within a list.
  std::optional<FermionTerm> normal_ordered() const;
  FermionTerm adjoint() const;
};

using FermionOperator = std::vector<FermionTerm>;

FermionOperator adjoint(const FermionOperator& op);
/// t - t^dagger.
FermionOperator anti_hermitian_part(const FermionOperator& op);

/// a_p -> Z_0 ... Z_{p-1} (X_p + i Y_p) / 2; occupied modes are |1>.
PauliSum jordan_wigner(const FermionTerm& term, int n_spin_orbitals);
PauliSum jordan_wigner(const FermionOperator& op, int n_spin_orbitals);

PauliSum number_operator(int n_spin_orbitals);
PauliSum sz_operator(int n_spatial, OrbitalOrdering ordering);

/// Restricted Hartree–Fock determinant: the lowest spatial orbitals doubly
/// occupied (alpha first when n_electrons is odd).
StateVector hartree_fock_state(int n_qubits, int n_electrons,
                               OrbitalOrdering ordering);
std::uint64_t hartree_fock_index(int n_qubits, int n_electrons,
                                 OrbitalOrdering ordering);

enum class PoolKind {
  kSpinAdaptedSingle,
  kSpinAdaptedDoubleTriplet,
  kSpinAdaptedDoubleSinglet,
  kQubitPauli,
};

std::string to_string(PoolKind kind);
PoolKind parse_pool_kind(std::string_view tag);

/// Hermitian, traceless generator A used as e^{i theta A}.
struct PoolOperator {
  PauliSum generator;
  std::string label;
  PoolKind kind;
};

/// Spin-adapted generalized singles and singlet/triplet-coupled doubles over
/// `n_spatial` orbitals, each as A = -i tau scaled to unit spectral norm.
std::vector<PoolOperator> build_spin_adapted_pool(
    int n_spatial, OrbitalOrdering ordering = OrbitalOrdering::kInterleaved);

/// Distinct Z-stripped Pauli words from the Jordan–Wigner images of all
/// one- and two-body anti-Hermitian excitations, each with coefficient 1.
std::vector<PoolOperator> build_qubit_pool(int n_qubits);

/// One operator per line: kind, label, then coefficient:word pairs.
void dump_pool(std::ostream& os, const std::vector<PoolOperator>& pool);
std::vector<PoolOperator> load_pool(std::istream& is, int n_qubits);

}  // namespace nova
