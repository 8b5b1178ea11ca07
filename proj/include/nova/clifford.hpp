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
#include <random>
#include <vector>

#include "nova/pauli.hpp"
#include "nova/statevector.hpp"

namespace nova {

/// Hermitian Pauli word with a sign: (-1)^negative * word.
struct SignedPauli {
  PauliString word;
  bool negative = false;
};

/**
 * Clifford unitary C stored as its tableau: the images C X_q C^dagger and
 * C Z_q C^dagger of the single-qubit generators.
 */
class Clifford {
 public:
  static Clifford identity(int n_qubits);
  /// Uniformly random n-qubit Clifford (symplectic Gram-Schmidt, random signs).
  static Clifford random(int n_qubits, std::mt19937_64& rng);
  static Clifford from_images(std::vector<SignedPauli> x_images,
                              std::vector<SignedPauli> z_images);

  int n_qubits() const { return n_qubits_; }
  const SignedPauli& x_image(int q) const { return x_images_[static_cast<std::size_t>(q)]; }
  const SignedPauli& z_image(int q) const { return z_images_[static_cast<std::size_t>(q)]; }

  /// C P C^dagger for a positive-phase word; the result is again Hermitian.
  SignedPauli conjugate(const PauliString& word) const;
  /// C S C^dagger term by term.
  PauliSum conjugate(const PauliSum& sum) const;

  /// Images satisfy the single-qubit commutation relations.
  bool is_symplectic() const;
  /// Binary matrix with rows x-images then z-images, columns x bits then z bits.
  std::vector<std::vector<std::uint8_t>> symplectic_matrix() const;

  /// C|index>, with an arbitrary but deterministic global phase.
  StateVector apply_to_basis_state(std::uint64_t index) const;

 private:
  int n_qubits_ = 0;
  std::vector<SignedPauli> x_images_;
  std::vector<SignedPauli> z_images_;
};

/// C|reference_index> for a uniformly random Clifford C drawn from `seed`.
/// Uniform Cliffords form an exact unitary 2-design.
StateVector random_2design_state(int n_qubits, std::uint64_t seed,
                                 std::uint64_t reference_index = 0);

}  // namespace nova
