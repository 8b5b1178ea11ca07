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

#include "nova/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nova {

namespace {

std::uint64_t register_mask(int n_qubits) {
  return n_qubits >= 64 ? ~std::uint64_t{0}
                        : ((std::uint64_t{1} << n_qubits) - 1);
}

void require_same_register(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": qubit counts differ (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
  }
}

// Sign of (-1)^popcount(index & z) times i^y for a word acting on |index>.
Complex word_phase_on_basis(std::uint64_t index, std::uint64_t z, int y_power) {
  const int sign_power = std::popcount(index & z) & 1 ? 2 : 0;
  return phase_value(y_power + sign_power);
}

}  // namespace

Complex phase_value(int power) {
  switch (((power % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(int n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits < 1 || n_qubits > kMaxMaskQubits) {
    throw std::invalid_argument("PauliString: qubit count out of range");
  }
  const auto mask = register_mask(n_qubits);
  if ((x_mask & ~mask) || (z_mask & ~mask)) {
    throw std::invalid_argument("PauliString: mask bits beyond register");
  }
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(n_qubits, 0, 0);
}

PauliString PauliString::from_label(std::string_view word) {
  std::uint64_t x = 0, z = 0;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (word[k]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("PauliString: bad character '" +
                                    std::string(1, word[k]) + "' in " +
                                    std::string(word));
    }
  }
  return PauliString(static_cast<int>(word.size()), x, z);
}

PauliString PauliString::single(int n_qubits, int qubit, char op) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument("PauliString::single: qubit out of range");
  }
  std::string word(static_cast<std::size_t>(n_qubits), 'I');
  word[static_cast<std::size_t>(qubit)] = op;
  return from_label(word);
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

int PauliString::y_count() const { return std::popcount(x_ & z_); }

char PauliString::op(int qubit) const {
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

std::string PauliString::label() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int k = 0; k < n_qubits_; ++k) s[static_cast<std::size_t>(k)] = op(k);
  return s;
}

bool PauliString::commutes_with(const PauliString& other) const {
  return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

// A word is i^{y} X^x Z^z, so the product of two words reduces to
// i^{ya + yb - yc} (-1)^{|za & xb|} times the result word.
PauliProduct multiply(const PauliString& a, const PauliString& b) {
  require_same_register(a.n_qubits(), b.n_qubits(), "multiply");
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int yc = std::popcount(x & z);
  const int swaps = std::popcount(a.z_mask() & b.x_mask());
  const int power = a.y_count() + b.y_count() - yc + 2 * swaps;
  return {PauliString(a.n_qubits(), x, z), ((power % 4) + 4) % 4};
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum::PauliSum(int n_qubits, double prune_threshold)
    : n_qubits_(n_qubits), prune_threshold_(prune_threshold) {
  if (n_qubits < 1 || n_qubits > kMaxMaskQubits) {
    throw std::invalid_argument("PauliSum: qubit count out of range");
  }
}

PauliSum::PauliSum(
    int n_qubits,
    std::initializer_list<std::pair<std::string_view, Complex>> terms)
    : PauliSum(n_qubits) {
  for (const auto& [word, c] : terms) add_term(word, c);
  prune();
}

PauliSum PauliSum::identity(int n_qubits, Complex coefficient) {
  PauliSum s(n_qubits);
  s.add_term(PauliString::identity(n_qubits), coefficient);
  return s.prune();
}

PauliSum PauliSum::from_word(const PauliString& word, Complex coefficient) {
  PauliSum s(word.n_qubits());
  s.add_term(word, coefficient);
  return s.prune();
}

Complex PauliSum::coefficient(const PauliString& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add_term(const PauliString& word, Complex coefficient) {
  require_same_register(n_qubits_, word.n_qubits(), "PauliSum::add_term");
  terms_[word] += coefficient;
}

void PauliSum::add_term(std::string_view word, Complex coefficient) {
  add_term(PauliString::from_label(word), coefficient);
}

PauliSum& PauliSum::prune() {
  std::erase_if(terms_, [this](const auto& kv) {
    return std::abs(kv.second) < prune_threshold_;
  });
  return *this;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& kv) {
    return std::abs(kv.second.imag()) <= tol;
  });
}

bool PauliSum::is_anti_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& kv) {
    return std::abs(kv.second.real()) <= tol;
  });
}

bool PauliSum::is_traceless(double tol) const {
  return std::abs(coefficient(PauliString::identity(n_qubits_))) <= tol;
}

bool PauliSum::all_terms_commute() const {
  for (auto i = terms_.begin(); i != terms_.end(); ++i) {
    for (auto j = std::next(i); j != terms_.end(); ++j) {
      if (!i->first.commutes_with(j->first)) return false;
    }
  }
  return true;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_, prune_threshold_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, std::conj(c));
  return out;
}

double PauliSum::abs_sum() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::abs(c);
  return s;
}

double PauliSum::max_abs_difference(const PauliSum& other) const {
  require_same_register(n_qubits_, other.n_qubits_, "max_abs_difference");
  double worst = 0.0;
  for (const auto& [w, c] : terms_) {
    worst = std::max(worst, std::abs(c - other.coefficient(w)));
  }
  for (const auto& [w, c] : other.terms_) {
    if (!terms_.contains(w)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  require_same_register(n_qubits_, other.n_qubits_, "PauliSum::operator+=");
  for (const auto& [w, c] : other.terms_) terms_[w] += c;
  return prune();
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  require_same_register(n_qubits_, other.n_qubits_, "PauliSum::operator-=");
  for (const auto& [w, c] : other.terms_) terms_[w] -= c;
  return prune();
}

PauliSum& PauliSum::operator*=(Complex scalar) {
  for (auto& [w, c] : terms_) c *= scalar;
  return prune();
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  require_same_register(a.n_qubits_, b.n_qubits_, "PauliSum product");
  PauliSum out(a.n_qubits_, a.prune_threshold_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      const auto p = multiply(wa, wb);
      out.terms_[p.word] += p.phase() * ca * cb;
    }
  }
  return out.prune();
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag())
       << "i) " << w.label();
  }
  if (first) os << "0";
  return os.str();
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  require_same_register(a.n_qubits(), b.n_qubits(), "commutator");
  PauliSum out(a.n_qubits(), a.prune_threshold());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (wa.commutes_with(wb)) continue;
      const auto p = multiply(wa, wb);
      out.add_term(p.word, 2.0 * p.phase() * ca * cb);
    }
  }
  return out.prune();
}

PauliSum nested_commutator(const PauliSum& h, const PauliSum& a) {
  return commutator(commutator(h, a), a);
}

// ---------------------------------------------------------------------------
// Dense and matrix-free actions

Eigen::MatrixXcd to_dense(const PauliSum& a) {
  if (a.n_qubits() > kMaxDenseQubits) {
    throw std::domain_error("to_dense: register too large for dense matrix");
  }
  const Eigen::Index dim = Eigen::Index{1} << a.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, c] : a.terms()) {
    const int y = w.y_count();
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto col = static_cast<std::uint64_t>(i);
      const auto row = static_cast<Eigen::Index>(col ^ w.x_mask());
      m(row, i) += c * word_phase_on_basis(col, w.z_mask(), y);
    }
  }
  return m;
}

Eigen::VectorXcd apply_word(const PauliString& word, const Eigen::VectorXcd& v) {
  if (v.size() != (Eigen::Index{1} << word.n_qubits())) {
    throw std::invalid_argument("apply_word: dimension mismatch");
  }
  Eigen::VectorXcd out(v.size());
  const int y = word.y_count();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    out[static_cast<Eigen::Index>(idx ^ word.x_mask())] =
        word_phase_on_basis(idx, word.z_mask(), y) * v[i];
  }
  return out;
}

PauliKernel::PauliKernel(const PauliSum& op) : n_qubits_(op.n_qubits()) {
  if (op.n_qubits() > kMaxExactQubits) {
    throw std::domain_error("PauliKernel: register too large");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  for (const auto& [w, c] : op.terms()) {
    auto it = std::find_if(groups_.begin(), groups_.end(), [&](const Group& g) {
      return g.x_mask == w.x_mask();
    });
    if (it == groups_.end()) {
      groups_.push_back({w.x_mask(), Eigen::VectorXcd::Zero(dim)});
      it = std::prev(groups_.end());
    }
    const int y = w.y_count();
    for (Eigen::Index i = 0; i < dim; ++i) {
      it->diagonal[i] +=
          c * word_phase_on_basis(static_cast<std::uint64_t>(i), w.z_mask(), y);
    }
  }
}

void PauliKernel::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  if (in.size() != dim) {
    throw std::invalid_argument("PauliKernel::apply: dimension mismatch");
  }
  out.setZero(dim);
  const Complex* src = in.data();
  Complex* dst = out.data();
  for (const auto& g : groups_) {
    const Complex* d = g.diagonal.data();
    const auto x = static_cast<std::size_t>(g.x_mask);
    if (x == 0) {
      for (Eigen::Index i = 0; i < dim; ++i) dst[i] += d[i] * src[i];
    } else {
      for (std::size_t i = 0; i < static_cast<std::size_t>(dim); ++i) {
        dst[i ^ x] += d[i] * src[i];
      }
    }
  }
}

Eigen::VectorXcd PauliKernel::operator*(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out;
  apply(in, out);
  return out;
}

// ---------------------------------------------------------------------------
// Spectra

namespace {

// Lanczos with full reorthogonalization and restart from the Ritz vector.
Eigenpair lanczos_lowest(const PauliKernel& op, double tol) {
  const Eigen::Index dim = Eigen::Index{1} << op.n_qubits();
  const Eigen::Index krylov = std::min<Eigen::Index>(dim, 120);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start[i] = {normal(rng), normal(rng)};
  start.normalize();

  Eigenpair best{0.0, start};
  for (int restart = 0; restart < 200; ++restart) {
    Eigen::MatrixXcd basis(dim, krylov);
    Eigen::VectorXd alpha(krylov), beta(krylov);
    basis.col(0) = best.vector;
    Eigen::Index m = 0;
    Eigen::VectorXcd w;
    for (; m < krylov; ++m) {
      op.apply(basis.col(m), w);
      alpha[m] = basis.col(m).dot(w).real();
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).adjoint() * w);
      }
      beta[m] = w.norm();
      if (m + 1 < krylov) {
        if (beta[m] < 1e-14) { ++m; break; }
        basis.col(m + 1) = w / beta[m];
      }
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    const Eigen::VectorXd y = small.eigenvectors().col(0);
    best.value = small.eigenvalues()[0];
    best.vector = basis.leftCols(m) * y.cast<Complex>();
    best.vector.normalize();
    const Eigen::VectorXcd residual = op * best.vector - best.value * best.vector;
    if (residual.norm() < tol) return best;
  }
  throw std::runtime_error("lowest_eigenpair: Lanczos did not converge");
}

}  // namespace

Eigenpair lowest_eigenpair(const PauliSum& h) {
  if (!h.is_hermitian()) {
    throw std::invalid_argument("lowest_eigenpair: operator is not Hermitian");
  }
  if (h.n_qubits() > kMaxExactQubits) {
    throw std::domain_error("lowest_eigenpair: register too large");
  }
  if (h.n_qubits() <= kMaxDenseQubits) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(h));
    return {solver.eigenvalues()[0], solver.eigenvectors().col(0)};
  }
  return lanczos_lowest(PauliKernel(h), 1e-10);
}

double spectral_norm(const PauliSum& a, NormMethod method) {
  if (!a.is_hermitian()) {
    throw std::invalid_argument("spectral_norm: operator is not Hermitian");
  }
  if (method == NormMethod::kAuto) {
    method = a.n_qubits() <= kMaxDenseQubits ? NormMethod::kExactDense
                                             : NormMethod::kUpperBoundAbsSum;
  }
  if (method == NormMethod::kUpperBoundAbsSum) return a.abs_sum();
  if (a.n_qubits() > kMaxExactQubits) {
    throw std::domain_error("spectral_norm: register too large for exact norm");
  }
  if (a.empty()) return 0.0;
  if (a.n_qubits() <= kMaxDenseQubits) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(a),
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  const double low = lowest_eigenpair(a).value;
  const double high = -lowest_eigenpair(-1.0 * a).value;
  return std::max(std::abs(low), std::abs(high));
}

}  // namespace nova
