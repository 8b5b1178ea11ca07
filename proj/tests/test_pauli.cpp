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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "nova/pauli.hpp"
#include "test_util.hpp"

namespace nova {
namespace {

using testing::random_hermitian;
using testing::random_word;

Eigen::Matrix2cd single(char op) {
  Eigen::Matrix2cd m;
  const Complex i(0.0, 1.0);
  switch (op) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1;
  }
  return m;
}

// Kronecker product with qubit 0 as the least significant index bit.
Eigen::MatrixXcd kron_oracle(const std::string& word) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : word) {
    const Eigen::Matrix2cd p = single(c);
    Eigen::MatrixXcd next(2 * m.rows(), 2 * m.cols());
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) next.block(r * m.rows(), s * m.cols(), m.rows(), m.cols()) = p(r, s) * m;
    m = next;
  }
  return m;
}

TEST(PauliString, YHasBothMaskBits) {
  const auto y = PauliString::from_label("IY");
  EXPECT_EQ(y.x_mask(), 2u);
  EXPECT_EQ(y.z_mask(), 2u);
  EXPECT_EQ(y.label(), "IY");
  EXPECT_THROW(PauliString::from_label("XQ"), std::invalid_argument);
}

TEST(PauliString, MasksAboveRegisterRejected) {
  EXPECT_THROW(PauliString(2, 4, 0), std::invalid_argument);
}

TEST(Multiply, SingleQubitTable) {
  const auto zx = multiply(PauliString::from_label("Z"), PauliString::from_label("X"));
  EXPECT_EQ(zx.word.label(), "Y");
  EXPECT_EQ(zx.phase(), Complex(0.0, 1.0));
  const auto xx = multiply(PauliString::from_label("X"), PauliString::from_label("X"));
  EXPECT_TRUE(xx.word.is_identity());
  EXPECT_EQ(xx.phase(), Complex(1.0, 0.0));
}

TEST(Multiply, TwoQubitExample) {
  const auto p = multiply(PauliString::from_label("XZ"), PauliString::from_label("ZZ"));
  EXPECT_EQ(p.word.label(), "YI");
  EXPECT_EQ(p.phase(), Complex(0.0, -1.0));
}

TEST(Multiply, MatchesDenseOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto a = random_word(n, rng), b = random_word(n, rng);
    const auto p = multiply(a, b);
    const Eigen::MatrixXcd lhs = kron_oracle(a.label()) * kron_oracle(b.label());
    const Eigen::MatrixXcd rhs = p.phase() * kron_oracle(p.word.label());
    EXPECT_LT((lhs - rhs).norm(), 1e-12) << a.label() << " * " << b.label();
  }
}

TEST(Multiply, AssociativeAndPhaseSymmetry) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_word(4, rng), b = random_word(4, rng), c = random_word(4, rng);
    const auto ab = multiply(a, b);
    const auto ab_c = multiply(ab.word, c);
    const auto bc = multiply(b, c);
    const auto a_bc = multiply(a, bc.word);
    EXPECT_EQ(ab_c.word, a_bc.word);
    EXPECT_EQ((ab.phase_power + ab_c.phase_power) % 4, (bc.phase_power + a_bc.phase_power) % 4);

    const auto ba = multiply(b, a);
    const Complex ratio = ab.phase() / ba.phase();
    EXPECT_NEAR(std::abs(ratio.imag()), 0.0, 1e-15);
    const bool commute = ratio.real() > 0.0;
    EXPECT_EQ(commute, a.commutes_with(b));
    EXPECT_EQ(commute, commutator(PauliSum::from_word(a), PauliSum::from_word(b)).empty());
  }
}

TEST(Multiply, DimensionMismatchThrows) {
  EXPECT_THROW(multiply(PauliString::identity(2), PauliString::identity(3)),
               std::invalid_argument);
}

TEST(PauliSum, PrunesBelowThreshold) {
  PauliSum s(2);
  s.add_term("XI", 1e-13);
  s.add_term("ZZ", 0.5);
  s.prune();
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.is_hermitian());
  PauliSum t = s * Complex(0.0, 1.0);
  EXPECT_TRUE(t.is_anti_hermitian());
  EXPECT_FALSE(t.is_hermitian());
}

TEST(PauliSum, CanonicalizationIdempotent) {
  std::mt19937_64 rng(3);
  const auto s = random_hermitian(3, 12, rng);
  PauliSum once = s;
  once.prune();
  PauliSum twice = once;
  twice.prune();
  EXPECT_EQ(once, twice);
}

TEST(Commutator, Examples) {
  const auto z = PauliSum::from_word(PauliString::from_label("Z"));
  const auto y = PauliSum::from_word(PauliString::from_label("Y"));
  const auto c = commutator(z, y);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.coefficient(PauliString::from_label("X")), Complex(0.0, -2.0));

  std::mt19937_64 rng(5);
  const auto h = random_hermitian(3, 8, rng);
  EXPECT_TRUE(commutator(h, h).empty());

  const auto xx = PauliSum::from_word(PauliString::from_label("XX"));
  const auto zz = PauliSum::from_word(PauliString::from_label("ZZ"));
  EXPECT_TRUE(commutator(xx, zz).empty());
  EXPECT_LT((to_dense(xx) * to_dense(zz) - to_dense(zz) * to_dense(xx)).norm(), 1e-14);
}

TEST(Commutator, AntisymmetricAndMatchesDense) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_hermitian(3, 6, rng), b = random_hermitian(3, 6, rng);
    const auto ab = commutator(a, b);
    EXPECT_LT(ab.max_abs_difference(commutator(b, a) * Complex(-1.0)), 1e-14);
    EXPECT_TRUE(ab.is_anti_hermitian());
    const Eigen::MatrixXcd da = to_dense(a), db = to_dense(b);
    EXPECT_LT((to_dense(ab) - (da * db - db * da)).norm(), 1e-12);
    const auto hermitian = commutator(a, ab);
    EXPECT_TRUE(hermitian.is_hermitian());
  }
}

TEST(Commutator, MismatchThrows) {
  EXPECT_THROW(commutator(PauliSum(2), PauliSum(3)), std::invalid_argument);
}

TEST(NestedCommutator, Examples) {
  const auto z = PauliSum::from_word(PauliString::from_label("Z"));
  const auto x = PauliSum::from_word(PauliString::from_label("X"));
  const auto y = PauliSum::from_word(PauliString::from_label("Y"));
  EXPECT_LT(nested_commutator(z, y).max_abs_difference(z * Complex(4.0)), 1e-15);
  EXPECT_LT(nested_commutator(x, y).max_abs_difference(x * Complex(4.0)), 1e-15);
}

TEST(SpectralNorm, Examples) {
  EXPECT_DOUBLE_EQ(spectral_norm(PauliSum::from_word(PauliString::from_label("X"))), 1.0);
  PauliSum s(2);
  s.add_term("XX", 1.0);
  s.add_term("ZZ", 1.0);
  EXPECT_NEAR(spectral_norm(s, NormMethod::kExactDense), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(spectral_norm(s, NormMethod::kUpperBoundAbsSum), 2.0);
}

TEST(SpectralNorm, ExactBelowAbsSumAndMatchesOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto h = random_hermitian(n, 1 + static_cast<int>(rng() % 10), rng);
    const double exact = spectral_norm(h, NormMethod::kExactDense);
    EXPECT_LE(exact, spectral_norm(h, NormMethod::kUpperBoundAbsSum) + 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(h));
    EXPECT_NEAR(exact, es.eigenvalues().cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SpectralNorm, RejectsNonHermitian) {
  PauliSum s(1);
  s.add_term("X", Complex(0.0, 1.0));
  EXPECT_THROW(spectral_norm(s), std::invalid_argument);
}

TEST(PauliKernel, MatchesDenseProduct) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_hermitian(4, 15, rng);
    const auto v = testing::random_state(4, rng).amplitudes();
    const PauliKernel k(h);
    EXPECT_LT((k * v - to_dense(h) * v).norm(), 1e-12);
  }
}

}  // namespace
}  // namespace nova
