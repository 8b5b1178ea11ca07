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

#include <map>

#include "nova/clifford.hpp"
#include "nova/random.hpp"
#include "test_util.hpp"

namespace nova {
namespace {

std::vector<std::uint8_t> flatten(const std::vector<std::vector<std::uint8_t>>& m) {
  std::vector<std::uint8_t> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

// Chi-square statistic of sampled symplectic parts against the uniform
// distribution on Sp(2n, 2), whose order is 6 for n = 1 and 720 for n = 2.
double symplectic_chi_square(int n, std::size_t group_order, int per_cell, std::size_t& seen) {
  std::mt19937_64 rng(1234 + n);
  std::map<std::vector<std::uint8_t>, int> counts;
  const int samples = per_cell * static_cast<int>(group_order);
  for (int s = 0; s < samples; ++s) {
    ++counts[flatten(Clifford::random(n, rng).symplectic_matrix())];
  }
  seen = counts.size();
  double chi2 = 0.0;
  for (const auto& [m, c] : counts) chi2 += (c - per_cell) * (c - per_cell) / double(per_cell);
  chi2 += double(group_order - counts.size()) * per_cell;
  return chi2;
}

TEST(Clifford, IdentityConjugation) {
  const auto c = Clifford::identity(3);
  const auto img = c.conjugate(PauliString::from_label("XYZ"));
  EXPECT_EQ(img.word.label(), "XYZ");
  EXPECT_FALSE(img.negative);
}

TEST(Clifford, RejectsNonSymplecticImages) {
  std::vector<SignedPauli> xs{{PauliString::from_label("X"), false}};
  std::vector<SignedPauli> zs{{PauliString::from_label("X"), false}};
  EXPECT_THROW(Clifford::from_images(xs, zs), std::invalid_argument);
}

TEST(Clifford, RandomIsSymplectic) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(Clifford::random(n, rng).is_symplectic());
}

TEST(Clifford, UniformOnOneQubit) {
  std::size_t seen = 0;
  const double chi2 = symplectic_chi_square(1, 6, 2000, seen);
  EXPECT_EQ(seen, 6u);
  // df = 5; the 0.999 quantile is 20.5.
  EXPECT_LT(chi2, 20.5);
}

TEST(Clifford, UniformOnTwoQubits) {
  std::size_t seen = 0;
  const double chi2 = symplectic_chi_square(2, 720, 40, seen);
  EXPECT_EQ(seen, 720u);
  // df = 719; mean 719 and standard deviation about 38.
  EXPECT_LT(chi2, 719.0 + 5.0 * 38.0);
}

TEST(Clifford, SignsUnbiased) {
  std::mt19937_64 rng(8);
  int negative = 0;
  const int samples = 4000;
  for (int s = 0; s < samples; ++s) negative += Clifford::random(2, rng).x_image(0).negative;
  EXPECT_NEAR(negative / double(samples), 0.5, 0.04);
}

TEST(Clifford, ConjugationConsistentWithStatePreparation) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto c = Clifford::random(n, rng);
    const std::uint64_t b = rng() % (std::uint64_t{1} << n);
    const auto cb = c.apply_to_basis_state(b);
    const auto basis = StateVector::basis(n, b);
    for (int k = 0; k < 5; ++k) {
      const auto p = PauliSum::from_word(testing::random_word(n, rng));
      EXPECT_NEAR(expectation(cb, c.conjugate(p)), expectation(basis, p), 1e-12);
    }
  }
}

TEST(Clifford, ConjugationPreservesTermCount) {
  std::mt19937_64 rng(10);
  const auto h = testing::random_hermitian(5, 12, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = Clifford::random(5, rng);
    const auto image = c.conjugate(h);
    EXPECT_EQ(image.size(), h.size());
    EXPECT_TRUE(image.is_hermitian());
    EXPECT_NEAR(image.abs_sum(), h.abs_sum(), 1e-14);
  }
}

TEST(Clifford, StreamsAreIndependent) {
  auto a = make_stream(5, Stream::kAlgorithm);
  auto b = make_stream(5, Stream::kRotationNoise);
  auto c = make_stream(5, Stream::kAlgorithm);
  const auto va = a();
  EXPECT_NE(va, b());
  EXPECT_EQ(va, c());
}

}  // namespace
}  // namespace nova
