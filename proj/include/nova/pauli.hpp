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

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nova {

using Complex = std::complex<double>;

/// Largest register the bitmask representation supports.
inline constexpr int kMaxMaskQubits = 63;
/// Largest register for which dense matrices are materialized.
inline constexpr int kMaxDenseQubits = 10;
/// Largest register for any exact spectral computation (Lanczos above dense).
inline constexpr int kMaxExactQubits = 14;

/// i^power for power taken mod 4.
Complex phase_value(int power);

/**
 * A positive-phase Pauli word on n qubits in symplectic form.
 *
 * Qubit k carries X when bit k of x_mask is set, Z when bit k of z_mask is
 * set, and Y (the Hermitian one) when both are set. Any phase produced by
 * algebra lives in an accompanying coefficient, never in the word.
 */
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(int n_qubits);
  /// Character k of `word` acts on qubit k; accepts I, X, Y, Z.
  static PauliString from_label(std::string_view word);
  static PauliString single(int n_qubits, int qubit, char op);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  bool is_identity() const { return (x_ | z_) == 0; }
  int weight() const;
  int y_count() const;
  char op(int qubit) const;
  std::string label() const;

  bool commutes_with(const PauliString& other) const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Result of multiplying two words: a * b = i^phase_power * word.
struct PauliProduct {
  PauliString word;
  int phase_power = 0;

  Complex phase() const { return phase_value(phase_power); }
};

PauliProduct multiply(const PauliString& a, const PauliString& b);

/**
 * Sparse complex-weighted sum of Pauli words on a fixed register.
 *
 * Terms are kept in canonical (x_mask, z_mask) order so iteration, and every
 * result derived from it, is deterministic. Compound operations prune
 * coefficients with magnitude below the prune threshold once at the end.
 */
class PauliSum {
 public:
  static constexpr double kDefaultPruneThreshold = 1e-12;

  using TermMap = std::map<PauliString, Complex>;

  explicit PauliSum(int n_qubits = 1,
                    double prune_threshold = kDefaultPruneThreshold);
  PauliSum(int n_qubits,
           std::initializer_list<std::pair<std::string_view, Complex>> terms);

  static PauliSum identity(int n_qubits, Complex coefficient = 1.0);
  static PauliSum from_word(const PauliString& word, Complex coefficient = 1.0);

  int n_qubits() const { return n_qubits_; }
  double prune_threshold() const { return prune_threshold_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Complex coefficient(const PauliString& word) const;

  /// Adds `coefficient * word`, merging with an existing term. No pruning.
  void add_term(const PauliString& word, Complex coefficient);
  void add_term(std::string_view word, Complex coefficient);
  /// Drops terms with |coefficient| < prune_threshold().
  PauliSum& prune();

  bool is_hermitian(double tol = 1e-10) const;
  bool is_anti_hermitian(double tol = 1e-10) const;
  bool is_traceless(double tol = 1e-10) const;
  bool all_terms_commute() const;

  PauliSum adjoint() const;
  /// Sum of |coefficient| over all terms.
  double abs_sum() const;
  /// Largest |a - b| coefficient difference, treating missing terms as zero.
  double max_abs_difference(const PauliSum& other) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scalar);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend bool operator==(const PauliSum& a, const PauliSum& b) {
    return a.terms_ == b.terms_ && a.n_qubits_ == b.n_qubits_;
  }

  std::string to_string() const;

 private:
  int n_qubits_;
  double prune_threshold_;
  TermMap terms_;
};

/// ab - ba. Commuting word pairs drop out; anticommuting pairs give 2ab.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// [[h, a], a]; its expectation is minus the second derivative of
/// <e^{-i t a} h e^{i t a}> at t = 0.
PauliSum nested_commutator(const PauliSum& h, const PauliSum& a);

enum class NormMethod { kAuto, kExactDense, kUpperBoundAbsSum };

/// Spectral norm of a Hermitian sum. kAuto is exact up to kMaxDenseQubits
/// and the absolute-coefficient bound above.
double spectral_norm(const PauliSum& a, NormMethod method = NormMethod::kAuto);

/// Dense matrix in the computational basis; basis index bit k is qubit k.
Eigen::MatrixXcd to_dense(const PauliSum& a);

/// Applies a single word: returns P|v>.
Eigen::VectorXcd apply_word(const PauliString& word, const Eigen::VectorXcd& v);

/**
 * Matrix-free action of a PauliSum on statevectors.
 *
 * Words sharing an x_mask act as one diagonal followed by a bit-flip
 * permutation, so the sum is stored as one diagonal per distinct x_mask.
 */
class PauliKernel {
 public:
  PauliKernel() = default;
  explicit PauliKernel(const PauliSum& op);

  int n_qubits() const { return n_qubits_; }
  std::size_t group_count() const { return groups_.size(); }

  /// out = op * in; out is resized as needed and must not alias in.
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::VectorXcd operator*(const Eigen::VectorXcd& in) const;

 private:
  struct Group {
    std::uint64_t x_mask;
    Eigen::VectorXcd diagonal;
  };
  int n_qubits_ = 0;
  std::vector<Group> groups_;
};

struct Eigenpair {
  double value;
  Eigen::VectorXcd vector;
};

/// Lowest eigenpair of a Hermitian sum: dense up to kMaxDenseQubits,
/// Lanczos up to kMaxExactQubits.
Eigenpair lowest_eigenpair(const PauliSum& h);

}  // namespace nova
