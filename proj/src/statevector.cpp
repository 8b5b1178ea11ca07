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

#include "nova/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace nova {

namespace {

Eigen::Index dimension_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

void check_norm(const Eigen::VectorXcd& v, const char* where) {
  const double drift = std::abs(v.norm() - 1.0);
  if (!(drift <= kNormTolerance)) {
    throw std::runtime_error(std::string(where) + ": norm drift " +
                             std::to_string(drift) + " exceeds tolerance");
  }
}

void require_hermitian(const PauliSum& op, const char* where) {
  if (!op.is_hermitian()) {
    throw std::invalid_argument(std::string(where) + ": operator is not Hermitian");
  }
}

void require_dimension(const StateVector& s, int n_qubits, const char* where) {
  if (s.n_qubits() != n_qubits) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

// Real expectation <v|w> where w = op v; the imaginary part must vanish.
double real_part_checked(Complex z, double scale, const char* where) {
  if (std::abs(z.imag()) > 1e-10 * std::max(1.0, scale)) {
    throw std::runtime_error(std::string(where) +
                             ": imaginary residue in Hermitian expectation");
  }
  return z.real();
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits)
    : StateVector(basis(n_qubits, 0)) {}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1 || n_qubits > kMaxExactQubits) {
    throw std::invalid_argument("StateVector: qubit count out of range");
  }
  const Eigen::Index dim = dimension_of(n_qubits);
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw std::invalid_argument("StateVector: basis index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amplitudes,
                                         bool normalize) {
  const auto dim = static_cast<std::uint64_t>(amplitudes.size());
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("StateVector: length is not a power of two");
  }
  const int n = std::countr_zero(dim);
  if (n > kMaxExactQubits) {
    throw std::invalid_argument("StateVector: qubit count out of range");
  }
  if (normalize) {
    const double nrm = amplitudes.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("StateVector: zero vector");
    amplitudes /= nrm;
  }
  check_norm(amplitudes, "StateVector::from_amplitudes");
  return StateVector(n, std::move(amplitudes));
}

Complex overlap(const StateVector& a, const StateVector& b) {
  require_dimension(b, a.n_qubits(), "overlap");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(overlap(a, b));
}

// ---------------------------------------------------------------------------
// Rotations and product formulas

void rotate_word_inplace(Eigen::VectorXcd& v, const PauliString& word,
                         double angle) {
  if (angle == 0.0) return;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::uint64_t x = word.x_mask();
  const std::uint64_t z = word.z_mask();
  // Phase of P on basis state j is i^y (-1)^{|j & z|}; i sin factor folded in.
  const Complex base = phase_value(word.y_count() + 1) * s;
  Complex* a = v.data();
  const auto dim = static_cast<std::uint64_t>(v.size());
  if (x == 0) {
    for (std::uint64_t j = 0; j < dim; ++j) {
      const Complex f = (std::popcount(j & z) & 1) ? -base : base;
      a[j] *= Complex(c, 0.0) + f;
    }
    return;
  }
  for (std::uint64_t j = 0; j < dim; ++j) {
    const std::uint64_t k = j ^ x;
    if (k < j) continue;
    // new[j] = c a[j] + i s phase(k) a[k]; new[k] = c a[k] + i s phase(j) a[j]
    const Complex fj = (std::popcount(j & z) & 1) ? -base : base;
    const Complex fk = (std::popcount(k & z) & 1) ? -base : base;
    const Complex aj = a[j];
    const Complex ak = a[k];
    a[j] = c * aj + fk * ak;
    a[k] = c * ak + fj * aj;
  }
}

std::vector<WeightedWord> weighted_words(const PauliSum& hermitian) {
  require_hermitian(hermitian, "weighted_words");
  std::vector<WeightedWord> out;
  out.reserve(hermitian.size());
  for (const auto& [w, c] : hermitian.terms()) out.push_back({w, c.real()});
  return out;
}

StateVector apply_trotter(const StateVector& state,
                          std::span<const WeightedWord> ordered_terms,
                          double angle, int steps) {
  if (steps < 1) throw std::invalid_argument("apply_trotter: steps must be >= 1");
  Eigen::VectorXcd v = state.amplitudes();
  const double dt = angle / steps;
  for (int s = 0; s < steps; ++s) {
    for (const auto& t : ordered_terms) {
      if (t.word.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("apply_trotter: dimension mismatch");
      }
      if (!t.word.is_identity()) rotate_word_inplace(v, t.word, dt * t.coefficient);
      else v *= std::exp(Complex(0.0, dt * t.coefficient));
    }
  }
  check_norm(v, "apply_trotter");
  return StateVector::from_amplitudes(std::move(v));
}

StateVector apply_exp(const StateVector& state, const PauliSum& generator,
                      double angle, ExpMode mode) {
  require_hermitian(generator, "apply_exp");
  require_dimension(state, generator.n_qubits(), "apply_exp");
  switch (mode.kind) {
    case ExpMode::Kind::kSingleTermRotation: {
      if (generator.size() != 1) {
        throw std::invalid_argument(
            "apply_exp: single_term_rotation needs a one-term generator");
      }
      const auto words = weighted_words(generator);
      return apply_trotter(state, words, angle, 1);
    }
    case ExpMode::Kind::kTrotter: {
      const auto words = weighted_words(generator);
      return apply_trotter(state, words, angle, mode.steps);
    }
    case ExpMode::Kind::kExactDense: {
      if (generator.n_qubits() > kMaxExactQubits) {
        throw std::domain_error("apply_exp: register too large for exact mode");
      }
      if (generator.n_qubits() <= kMaxDenseQubits) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_dense(generator));
        const Eigen::VectorXcd phases =
            (Complex(0.0, angle) * eig.eigenvalues().cast<Complex>())
                .array()
                .exp();
        Eigen::VectorXcd v =
            eig.eigenvectors() *
            (phases.asDiagonal() * (eig.eigenvectors().adjoint() * state.amplitudes()));
        check_norm(v, "apply_exp");
        return StateVector::from_amplitudes(std::move(v));
      }
      return ExactPropagator(generator).apply(state, angle);
    }
  }
  throw std::logic_error("apply_exp: unknown mode");
}

// ---------------------------------------------------------------------------
// ExactPropagator

struct ExactPropagator::Spectrum {
  // Distinct eigenvalues of generator / scale and the inverse Vandermonde.
  Eigen::VectorXd nodes;
  Eigen::MatrixXd inverse_vandermonde;
  // Dense fallback.
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  bool polynomial = false;
};

namespace {

constexpr int kMaxPolynomialNodes = 9;

Eigen::VectorXd distinct_values(const Eigen::VectorXd& sorted, double tol) {
  std::vector<double> out;
  std::vector<int> counts;
  for (Eigen::Index i = 0; i < sorted.size(); ++i) {
    if (!out.empty() && sorted[i] - out.back() / counts.back() <= tol) {
      out.back() += sorted[i];
      ++counts.back();
    } else {
      out.push_back(sorted[i]);
      counts.push_back(1);
    }
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = out[i] / counts[i];
  }
  return v;
}

}  // namespace

ExactPropagator::ExactPropagator(const PauliSum& generator)
    : generator_(generator), kernel_(generator) {
  require_hermitian(generator, "ExactPropagator");
  if (generator.n_qubits() > kMaxExactQubits) {
    throw std::domain_error("ExactPropagator: register too large");
  }
  choose_method();
}

ExactPropagator::ExactPropagator(const PauliSum& generator,
                                 std::shared_ptr<const Spectrum> s)
    : generator_(generator), kernel_(generator), spectrum_(std::move(s)) {}

void ExactPropagator::choose_method() {
  words_ = weighted_words(generator_);
  scale_ = std::max(generator_.abs_sum(), 1e-300);
  if (generator_.all_terms_commute()) {
    method_ = Method::kCommutingProduct;
    return;
  }
  if (generator_.n_qubits() > kMaxDenseQubits) {
    method_ = Method::kTaylor;
    return;
  }
  auto spec = std::make_shared<Spectrum>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_dense(generator_));
  spec->eigenvalues = eig.eigenvalues();
  spec->eigenvectors = eig.eigenvectors();
  scale_ = std::max(spec->eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
  spec->nodes = distinct_values(spec->eigenvalues / scale_, 1e-9);
  const Eigen::Index m = spec->nodes.size();
  method_ = Method::kDenseEigen;
  spectrum_ = spec;
  if (m <= kMaxPolynomialNodes) {
    Eigen::MatrixXd vandermonde(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      double p = 1.0;
      for (Eigen::Index k = 0; k < m; ++k, p *= spec->nodes[j]) vandermonde(j, k) = p;
    }
    spec->inverse_vandermonde = vandermonde.fullPivLu().inverse();
    spec->polynomial = true;
    // Accept the interpolant only if it reproduces the eigendecomposition.
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd probe(spec->eigenvectors.rows());
    for (Eigen::Index i = 0; i < probe.size(); ++i) probe[i] = {normal(rng), normal(rng)};
    probe.normalize();
    double worst = 0.0;
    for (double angle : {0.37, -1.9, 3.1}) {
      method_ = Method::kSpectralPolynomial;
      Eigen::VectorXcd a = probe;
      apply_inplace(a, angle);
      method_ = Method::kDenseEigen;
      Eigen::VectorXcd b = probe;
      apply_inplace(b, angle);
      worst = std::max(worst, (a - b).norm());
    }
    if (worst < 1e-12) {
      method_ = Method::kSpectralPolynomial;
      spec->eigenvectors.resize(0, 0);
    } else {
      spec->polynomial = false;
    }
  }
}

ExactPropagator ExactPropagator::conjugate_to(
    const PauliSum& equivalent_generator) const {
  require_hermitian(equivalent_generator, "ExactPropagator::conjugate_to");
  if (method_ != Method::kSpectralPolynomial) {
    return ExactPropagator(equivalent_generator);
  }
  ExactPropagator out(equivalent_generator, spectrum_);
  out.words_ = weighted_words(equivalent_generator);
  out.scale_ = scale_;
  out.method_ = equivalent_generator.all_terms_commute()
                    ? Method::kCommutingProduct
                    : Method::kSpectralPolynomial;
  return out;
}

void ExactPropagator::apply_inplace(Eigen::VectorXcd& v, double angle) const {
  if (angle == 0.0) return;
  switch (method_) {
    case Method::kCommutingProduct:
      for (const auto& t : words_) {
        if (t.word.is_identity()) v *= std::exp(Complex(0.0, angle * t.coefficient));
        else rotate_word_inplace(v, t.word, angle * t.coefficient);
      }
      return;
    case Method::kSpectralPolynomial: {
      const auto& s = *spectrum_;
      const Eigen::Index m = s.nodes.size();
      Eigen::VectorXcd e(m);
      for (Eigen::Index j = 0; j < m; ++j) {
        e[j] = std::exp(Complex(0.0, angle * scale_ * s.nodes[j]));
      }
      const Eigen::VectorXcd coeff = s.inverse_vandermonde.cast<Complex>() * e;
      Eigen::VectorXcd power = v;
      Eigen::VectorXcd next;
      v *= coeff[0];
      for (Eigen::Index k = 1; k < m; ++k) {
        kernel_.apply(power, next);
        power.swap(next);
        power /= scale_;
        v += coeff[k] * power;
      }
      return;
    }
    case Method::kDenseEigen: {
      const auto& s = *spectrum_;
      const Eigen::VectorXcd phases =
          (Complex(0.0, angle) * s.eigenvalues.cast<Complex>()).array().exp();
      v = s.eigenvectors * (phases.asDiagonal() * (s.eigenvectors.adjoint() * v));
      return;
    }
    case Method::kTaylor: {
      const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(angle) * scale_ / 0.5)));
      const double dt = angle / steps;
      Eigen::VectorXcd term, next;
      for (int s = 0; s < steps; ++s) {
        term = v;
        for (int k = 1; k < 60; ++k) {
          kernel_.apply(term, next);
          term = next * (Complex(0.0, dt) / static_cast<double>(k));
          v += term;
          if (term.norm() < 1e-17) break;
        }
      }
      return;
    }
  }
}

StateVector ExactPropagator::apply(const StateVector& state, double angle) const {
  require_dimension(state, generator_.n_qubits(), "ExactPropagator::apply");
  Eigen::VectorXcd v = state.amplitudes();
  apply_inplace(v, angle);
  check_norm(v, "ExactPropagator::apply");
  return StateVector::from_amplitudes(std::move(v));
}

// ---------------------------------------------------------------------------
// Expectations and derivatives

Observable::Observable(PauliSum op) : sum_(std::move(op)) {
  require_hermitian(sum_, "Observable");
  kernel_ = PauliKernel(sum_);
}

double Observable::expectation(const StateVector& state) const {
  require_dimension(state, sum_.n_qubits(), "expectation");
  const Complex z = state.amplitudes().dot(kernel_ * state.amplitudes());
  return real_part_checked(z, sum_.abs_sum(), "expectation");
}

double expectation(const StateVector& state, const PauliSum& op) {
  return Observable(op).expectation(state);
}

double energy_gradient(const StateVector& state, const PauliSum& h,
                       const PauliSum& a) {
  require_hermitian(h, "energy_gradient");
  require_hermitian(a, "energy_gradient");
  require_dimension(state, h.n_qubits(), "energy_gradient");
  const PauliSum c = commutator(h, a);
  const Complex z = state.amplitudes().dot(PauliKernel(c) * state.amplitudes());
  // i<[h,a]> is real because [h,a] is anti-Hermitian.
  const Complex g = Complex(0.0, 1.0) * z;
  return real_part_checked(g, c.abs_sum(), "energy_gradient");
}

double energy_second_derivative(const StateVector& state, const PauliSum& h,
                                const PauliSum& a) {
  require_hermitian(h, "energy_second_derivative");
  require_hermitian(a, "energy_second_derivative");
  const PauliSum nested = nested_commutator(h, a);
  return -Observable(nested).expectation(state);
}

double energy_gradient(const StateVector& state, const Eigen::VectorXcd& h_psi,
                       const PauliKernel& a) {
  const Eigen::VectorXcd a_psi = a * state.amplitudes();
  return -2.0 * h_psi.dot(a_psi).imag();
}

double energy_second_derivative(const StateVector& state,
                                const Eigen::VectorXcd& h_psi,
                                const PauliKernel& h, const PauliKernel& a) {
  const Eigen::VectorXcd a_psi = a * state.amplitudes();
  const Eigen::VectorXcd aa_psi = a * a_psi;
  const Eigen::VectorXcd h_a_psi = h * a_psi;
  return 2.0 * a_psi.dot(h_a_psi).real() - 2.0 * h_psi.dot(aa_psi).real();
}

std::pair<double, StateVector> exact_ground_energy(const PauliSum& h) {
  auto pair = lowest_eigenpair(h);
  const Eigen::VectorXcd residual =
      PauliKernel(h) * pair.vector - pair.value * pair.vector;
  if (residual.norm() >= 1e-9) {
    throw std::runtime_error("exact_ground_energy: eigen residual too large");
  }
  return {pair.value, StateVector::from_amplitudes(std::move(pair.vector), true)};
}

}  // namespace nova
