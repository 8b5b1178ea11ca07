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
#include <cstdint>
#include <memory>
#include <span>
#include <utility>

#include "nova/pauli.hpp"

namespace nova {

/// Tolerance on the unit-norm invariant of StateVector.
inline constexpr double kNormTolerance = 1e-10;

/// Unit-norm amplitude vector of length 2^n. Basis index bit k is qubit k.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(int n_qubits);

  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Normalizes `amplitudes` when `normalize` is set, otherwise checks
  /// that the norm is already one within kNormTolerance.
  static StateVector from_amplitudes(Eigen::VectorXcd amplitudes,
                                     bool normalize = false);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }
  double norm() const { return amplitudes_.norm(); }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.n_qubits_ == b.n_qubits_ && a.amplitudes_ == b.amplitudes_;
  }

 private:
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  int n_qubits_;
  Eigen::VectorXcd amplitudes_;
};

Complex overlap(const StateVector& a, const StateVector& b);
/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

struct ExpMode {
  enum class Kind { kExactDense, kSingleTermRotation, kTrotter };
  Kind kind = Kind::kExactDense;
  int steps = 1;

  static ExpMode exact_dense() { return {Kind::kExactDense, 1}; }
  static ExpMode single_term_rotation() { return {Kind::kSingleTermRotation, 1}; }
  static ExpMode trotter(int steps) { return {Kind::kTrotter, steps}; }
};

/// e^{i angle generator}|state>. The generator must be Hermitian.
StateVector apply_exp(const StateVector& state, const PauliSum& generator,
                      double angle, ExpMode mode = ExpMode::exact_dense());

/// One real-weighted word of a product formula.
struct WeightedWord {
  PauliString word;
  double coefficient;
};

/// First-order product formula for e^{i angle sum_k c_k P_k}: each step
/// applies e^{i (angle/steps) c_k P_k} for k in the given order.
StateVector apply_trotter(const StateVector& state,
                          std::span<const WeightedWord> ordered_terms,
                          double angle, int steps = 1);
/// In-place rotation e^{i angle P} on a raw amplitude vector.
void rotate_word_inplace(Eigen::VectorXcd& v, const PauliString& word,
                         double angle);

/// Ordered (canonical) term list of a Hermitian sum.
std::vector<WeightedWord> weighted_words(const PauliSum& hermitian);

/**
 * Cached exact exponential of a fixed Hermitian generator.
 *
 * The strategy is fixed at construction: a product of word rotations when all
 * words commute, otherwise a polynomial in the generator interpolating
 * e^{i angle lambda} on its distinct eigenvalues, falling back to a stored
 * eigendecomposition for rich spectra and to a scaled Taylor series beyond
 * dense sizes. Every strategy is exact to rounding.
 */
class ExactPropagator {
 public:
  enum class Method { kCommutingProduct, kSpectralPolynomial, kDenseEigen, kTaylor };

  explicit ExactPropagator(const PauliSum& generator);

  /// Propagator for a generator unitarily equivalent to this one (same
  /// spectrum), reusing the spectral data.
  ExactPropagator conjugate_to(const PauliSum& equivalent_generator) const;

  Method method() const { return method_; }
  const PauliSum& generator() const { return generator_; }
  const PauliKernel& kernel() const { return kernel_; }

  StateVector apply(const StateVector& state, double angle) const;
  /// In place; no norm check.
  void apply_inplace(Eigen::VectorXcd& v, double angle) const;

 private:
  struct Spectrum;

  ExactPropagator(const PauliSum& generator, std::shared_ptr<const Spectrum> s);
  void choose_method();

  PauliSum generator_;
  PauliKernel kernel_;
  Method method_ = Method::kTaylor;
  std::vector<WeightedWord> words_;
  std::shared_ptr<const Spectrum> spectrum_;
  double scale_ = 1.0;
};

/// Hermitian operator with its cached kernel.
class Observable {
 public:
  explicit Observable(PauliSum op);

  const PauliSum& sum() const { return sum_; }
  const PauliKernel& kernel() const { return kernel_; }
  int n_qubits() const { return sum_.n_qubits(); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return kernel_ * v; }
  double expectation(const StateVector& state) const;

 private:
  PauliSum sum_;
  PauliKernel kernel_;
};

/// <state|op|state> for Hermitian op.
double expectation(const StateVector& state, const PauliSum& op);

/// dE/dt at t = 0 of <e^{-i t a} h e^{i t a}>, i.e. i<[h, a]>.
double energy_gradient(const StateVector& state, const PauliSum& h,
                       const PauliSum& a);
/// d2E/dt2 at t = 0, i.e. -<[[h, a], a]>.
double energy_second_derivative(const StateVector& state, const PauliSum& h,
                                const PauliSum& a);

/// Fast forms given h|state>: the gradient is -2 Im <h psi|a psi>.
double energy_gradient(const StateVector& state, const Eigen::VectorXcd& h_psi,
                       const PauliKernel& a);
/// 2 <a psi|h|a psi> - 2 Re <h psi|a a psi>.
double energy_second_derivative(const StateVector& state,
                                const Eigen::VectorXcd& h_psi,
                                const PauliKernel& h, const PauliKernel& a);

/// Smallest eigenvalue and a unit eigenvector.
std::pair<double, StateVector> exact_ground_energy(const PauliSum& h);

}  // namespace nova
