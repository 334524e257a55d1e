/*
 * Copyright 2026 The spintori Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spintori;

namespace {

void expect_sound(const IntMatrix& a, const SnfResult& r) {
  EXPECT_EQ(r.p * a * r.q, r.d);
  EXPECT_EQ(abs(determinant(r.p)), 1);
  EXPECT_EQ(abs(determinant(r.q)), 1);
  for (std::size_t i = 0; i < r.d.rows(); ++i)
    for (std::size_t j = 0; j < r.d.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(r.d(i, j), 0);
      }
  const auto diag = r.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    EXPECT_GE(diag[i], 0);
    if (i + 1 < diag.size()) {
      if (diag[i] == 0) {
        EXPECT_EQ(diag[i + 1], 0);
      } else {
        EXPECT_EQ(diag[i + 1] % diag[i], 0);
      }
    }
  }
}

}  // namespace

TEST(Smith, Examples) {
  const auto id = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(id.d, IntMatrix::identity(3));
  EXPECT_EQ(id.p, IntMatrix::identity(3));
  EXPECT_EQ(id.q, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 1}, {0, 2}}).d, (IntMatrix{{1, 0}, {0, 4}}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{10, 0}, {0, 8}}).d, (IntMatrix{{2, 0}, {0, 40}}));
}

TEST(Smith, InvariantFactorExamples) {
  EXPECT_EQ(invariant_factors(torus_matrix(SignedCycleType::parse("-1,-1"), 3)).factors, (std::vector<Integer>{4, 4}));
  EXPECT_EQ(invariant_factors(torus_matrix(SignedCycleType::parse("-2,-2"), 3)).factors,
            (std::vector<Integer>{10, 10}));
  const auto zero = invariant_factors(IntMatrix(2, 2));
  EXPECT_TRUE(zero.factors.empty());
  EXPECT_EQ(zero.free_rank, 2);
  const auto rect = invariant_factors(IntMatrix{{2, 0, 0}, {0, 3, 0}});
  EXPECT_EQ(rect.factors, (std::vector<Integer>{6}));
  EXPECT_EQ(rect.free_rank, 1);
  EXPECT_EQ(rect.to_string(), "(6) + Z^1");
}

TEST(Smith, DeterminantExamples) {
  EXPECT_EQ(determinant(transition_matrix(2)), 2);
  EXPECT_EQ(abs(determinant(torus_matrix(SignedCycleType::parse("1,-3"), 3))), 56);
  EXPECT_EQ(determinant(IntMatrix{{10, 0}, {0, 8}}), 80);
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_THROW(determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST(Smith, WitnessesOnRandomMatrices) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    const int bound = trial % 3 == 0 ? 1000000 : (trial % 3 == 1 ? 10 : 2);
    const IntMatrix a = oracle::random_matrix(rng, rows, cols, bound);
    expect_sound(a, smith_normal_form(a));
    if (HasFailure()) FAIL() << "input:\n" << format_matrix(a);
  }
}

TEST(Smith, DeterminantAgreesWithCofactorExpansion) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const IntMatrix a = oracle::random_matrix(rng, n, n, trial % 2 ? 1000000 : 3);
    const Integer det = determinant(a);
    EXPECT_EQ(det, oracle::cofactor_determinant(a));
    if (det != 0) {
      Integer product = 1;
      for (const auto& d : smith_normal_form(a).diagonal()) product *= d;
      EXPECT_EQ(product, abs(det));
    }
  }
}

TEST(Smith, TransposeAndUnimodularInvariance) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    const IntMatrix a = oracle::random_matrix(rng, rows, cols, 20);
    const auto inv = invariant_factors(a);
    // Free rank counts columns minus rank, so only the torsion part is
    // transpose invariant for rectangular input.
    const auto transposed = invariant_factors(a.transpose());
    EXPECT_EQ(transposed.factors, inv.factors);
    if (rows == cols) {
      EXPECT_EQ(transposed, inv);
    }
    const IntMatrix u = oracle::random_unimodular(rng, rows), v = oracle::random_unimodular(rng, cols);
    EXPECT_EQ(invariant_factors(u * a * v), inv);
  }
}

TEST(Smith, DiagonalMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const IntMatrix a = oracle::random_matrix(rng, rows, cols, trial % 2 ? 50 : 4);
    const auto expected = oracle::invariant_factors_from_minors(a);
    auto diag = smith_normal_form(a).diagonal();
    while (!diag.empty() && diag.back() == 0) diag.pop_back();
    EXPECT_EQ(diag, expected) << format_matrix(a);
  }
}

TEST(Smith, WitnessExamples) {
  const auto iv = diagonalization_witnesses(TwoByTwoForm::odd_corner, 3, 2, 5);
  EXPECT_EQ(iv.p, (IntMatrix{{-1, -2}, {-4, -7}}));
  EXPECT_EQ(iv.q, (IntMatrix{{2, -13}, {-1, 6}}));
  EXPECT_EQ(iv.source, (IntMatrix{{6, 5}, {0, 4}}));
  EXPECT_EQ(iv.p * iv.source * iv.q, (IntMatrix{{1, 0}, {0, 24}}));

  const auto ii = diagonalization_witnesses(TwoByTwoForm::unit_corner, 2, 3);
  EXPECT_EQ(ii.p, (IntMatrix{{1, 0}, {-3, 1}}));
  EXPECT_EQ(ii.q, (IntMatrix{{0, -1}, {1, 2}}));
  EXPECT_EQ(ii.p * ii.source * ii.q, (IntMatrix{{1, 0}, {0, 6}}));

  const auto i = diagonalization_witnesses(TwoByTwoForm::coprime_diagonal, 1, 1);
  EXPECT_EQ(i.p * i.source * i.q, IntMatrix::identity(2));
}

TEST(Smith, WitnessPreconditions) {
  EXPECT_THROW(diagonalization_witnesses(TwoByTwoForm::coprime_diagonal, 4, 6), std::invalid_argument);
  EXPECT_THROW(diagonalization_witnesses(TwoByTwoForm::divisible_corner, 4, 6, 3), std::invalid_argument);
  EXPECT_THROW(diagonalization_witnesses(TwoByTwoForm::odd_corner, 3, 2, 4), std::invalid_argument);
  EXPECT_THROW(diagonalization_witnesses(TwoByTwoForm::odd_corner, 4, 2, 5), std::invalid_argument);
}

TEST(Smith, WitnessesOnRandomParameters) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long long> d(-100000, 100000);
  for (auto form : {TwoByTwoForm::coprime_diagonal, TwoByTwoForm::unit_corner, TwoByTwoForm::divisible_corner,
                    TwoByTwoForm::odd_corner}) {
    int produced = 0;
    while (produced < 300) {
      const Integer a = d(rng), b = d(rng);
      Integer c = d(rng);
      if (form == TwoByTwoForm::coprime_diagonal || form == TwoByTwoForm::odd_corner) {
        if (gcd(a, b) != 1) continue;
      }
      if (form == TwoByTwoForm::divisible_corner) c = gcd(a, b) * d(rng);
      if (form == TwoByTwoForm::odd_corner && c % 2 == 0) continue;
      const auto w = diagonalization_witnesses(form, a, b, c);
      EXPECT_EQ(w.p * w.source * w.q, w.target);
      EXPECT_EQ(abs(determinant(w.p)), 1);
      EXPECT_EQ(abs(determinant(w.q)), 1);
      ++produced;
    }
  }
}
