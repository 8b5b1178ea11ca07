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

#include "nova/clifford.hpp"

#include <bit>
#include <stdexcept>

#include "nova/random.hpp"

namespace nova {

namespace {

using BitMatrix = std::vector<std::vector<std::uint8_t>>;

BitMatrix zeros(int rows, int cols) {
  return BitMatrix(static_cast<std::size_t>(rows),
                   std::vector<std::uint8_t>(static_cast<std::size_t>(cols), 0));
}

std::uint8_t random_bit(std::mt19937_64& rng) {
  return static_cast<std::uint8_t>(rng() >> 63);
}

struct Symplectic {
  std::uint64_t x = 0, z = 0;
};

bool form(const Symplectic& a, const Symplectic& b) {
  return (std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1) != 0;
}

Symplectic add(Symplectic a, const Symplectic& b) {
  a.x ^= b.x;
  a.z ^= b.z;
  return a;
}

// Uniform vector in the symplectic complement of the chosen pairs.
Symplectic complement_sample(int n, const std::vector<std::pair<Symplectic, Symplectic>>& pairs,
                             std::mt19937_64& rng) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  Symplectic v{rng() & mask, rng() & mask};
  for (const auto& [x, z] : pairs) {
    const bool with_z = form(v, z), with_x = form(v, x);
    if (with_z) v = add(v, x);
    if (with_x) v = add(v, z);
  }
  return v;
}

}  // namespace

Clifford Clifford::identity(int n_qubits) {
  std::vector<SignedPauli> xs, zs;
  for (int q = 0; q < n_qubits; ++q) {
    xs.push_back({PauliString::single(n_qubits, q, 'X'), false});
    zs.push_back({PauliString::single(n_qubits, q, 'Z'), false});
  }
  return from_images(std::move(xs), std::move(zs));
}

Clifford Clifford::from_images(std::vector<SignedPauli> x_images,
                               std::vector<SignedPauli> z_images) {
  if (x_images.empty() || x_images.size() != z_images.size()) {
    throw std::invalid_argument("Clifford: image lists must be non-empty and equal");
  }
  Clifford c;
  c.n_qubits_ = static_cast<int>(x_images.size());
  for (const auto& p : x_images)
    if (p.word.n_qubits() != c.n_qubits_) throw std::invalid_argument("Clifford: bad image");
  for (const auto& p : z_images)
    if (p.word.n_qubits() != c.n_qubits_) throw std::invalid_argument("Clifford: bad image");
  c.x_images_ = std::move(x_images);
  c.z_images_ = std::move(z_images);
  if (!c.is_symplectic()) {
    throw std::invalid_argument("Clifford: images violate commutation relations");
  }
  return c;
}

// Symplectic Gram-Schmidt: each (x_q, z_q) pair is drawn uniformly from the
// complement of the earlier pairs, which is uniform on Sp(2n, 2). Signs are
// uniform and independent.
Clifford Clifford::random(int n, std::mt19937_64& rng) {
  if (n < 1 || n > kMaxMaskQubits) {
    throw std::invalid_argument("Clifford::random: qubit count out of range");
  }
  std::vector<std::pair<Symplectic, Symplectic>> pairs;
  for (int q = 0; q < n; ++q) {
    Symplectic x;
    do x = complement_sample(n, pairs, rng);
    while (x.x == 0 && x.z == 0);
    Symplectic z;
    do z = complement_sample(n, pairs, rng);
    while (!form(x, z));
    pairs.emplace_back(x, z);
  }
  std::vector<SignedPauli> xs, zs;
  for (const auto& [x, z] : pairs) {
    xs.push_back({PauliString(n, x.x, x.z), random_bit(rng) != 0});
    zs.push_back({PauliString(n, z.x, z.z), random_bit(rng) != 0});
  }
  return from_images(std::move(xs), std::move(zs));
}

bool Clifford::is_symplectic() const {
  for (int a = 0; a < n_qubits_; ++a) {
    for (int b = 0; b < n_qubits_; ++b) {
      const bool same = a == b;
      if (!x_image(a).word.commutes_with(x_image(b).word)) return false;
      if (!z_image(a).word.commutes_with(z_image(b).word)) return false;
      // X_a and Z_b anticommute exactly when a == b.
      if (x_image(a).word.commutes_with(z_image(b).word) == same) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::uint8_t>> Clifford::symplectic_matrix() const {
  auto m = zeros(2 * n_qubits_, 2 * n_qubits_);
  const auto fill = [&](int row, const PauliString& w) {
    for (int q = 0; q < n_qubits_; ++q) {
      m[row][q] = (w.x_mask() >> q) & 1;
      m[row][n_qubits_ + q] = (w.z_mask() >> q) & 1;
    }
  };
  for (int q = 0; q < n_qubits_; ++q) {
    fill(q, x_image(q).word);
    fill(n_qubits_ + q, z_image(q).word);
  }
  return m;
}

// P = i^y X^x Z^z, so C P C^dagger = i^y prod C X_q C^dagger prod C Z_q C^dagger.
SignedPauli Clifford::conjugate(const PauliString& word) const {
  if (word.n_qubits() != n_qubits_) {
    throw std::invalid_argument("Clifford::conjugate: dimension mismatch");
  }
  PauliString acc = PauliString::identity(n_qubits_);
  int power = word.y_count();
  for (int q = 0; q < n_qubits_; ++q) {
    if ((word.x_mask() >> q) & 1) {
      const auto p = multiply(acc, x_image(q).word);
      acc = p.word;
      power += p.phase_power + (x_image(q).negative ? 2 : 0);
    }
  }
  for (int q = 0; q < n_qubits_; ++q) {
    if ((word.z_mask() >> q) & 1) {
      const auto p = multiply(acc, z_image(q).word);
      acc = p.word;
      power += p.phase_power + (z_image(q).negative ? 2 : 0);
    }
  }
  power = ((power % 4) + 4) % 4;
  if (power % 2 != 0) {
    throw std::logic_error("Clifford::conjugate: non-Hermitian image");
  }
  return {acc, power == 2};
}

PauliSum Clifford::conjugate(const PauliSum& sum) const {
  PauliSum out(sum.n_qubits(), sum.prune_threshold());
  for (const auto& [w, c] : sum.terms()) {
    const auto image = conjugate(w);
    out.add_term(image.word, image.negative ? -c : c);
  }
  return out.prune();
}

StateVector Clifford::apply_to_basis_state(std::uint64_t index) const {
  if (n_qubits_ > kMaxExactQubits) {
    throw std::domain_error("Clifford::apply_to_basis_state: register too large");
  }
  // C|b> is the joint +1 eigenvector of (-1)^{b_q} C Z_q C^dagger.
  const auto dim = std::uint64_t{1} << n_qubits_;
  for (std::uint64_t k = 0; k < dim; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(k)] = 1.0;
    for (int q = 0; q < n_qubits_; ++q) {
      const auto& g = z_image(q);
      const bool flip = ((index >> q) & 1) != g.negative;
      const Eigen::VectorXcd gv = apply_word(g.word, v);
      v = 0.5 * (flip ? Eigen::VectorXcd(v - gv) : Eigen::VectorXcd(v + gv));
    }
    const double nrm = v.norm();
    if (nrm > 1e-3) return StateVector::from_amplitudes(v / nrm);
  }
  throw std::logic_error("Clifford::apply_to_basis_state: empty stabilizer space");
}

StateVector random_2design_state(int n_qubits, std::uint64_t seed,
                                 std::uint64_t reference_index) {
  auto rng = make_stream(seed, Stream::kInitialState);
  return Clifford::random(n_qubits, rng).apply_to_basis_state(reference_index);
}

}  // namespace nova
