// Copyright 2026 The lambdarr Authors
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

#include "lambdarr/joint_scheme.h"

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lambdarr/oracle.h"
#include "test_util.h"

namespace lambdarr {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

// Frozen from numpy: sums of per-factor row entropies at n = 5.
constexpr double kPairBits = 1.3502864928199738;  // (0.8, 2) and (0.4, 2)
constexpr double kLowTripleBits = 6.6277;         // (0.3, 0.2, 0.1)

JointScheme Scheme(std::vector<double> lambdas, std::vector<int> sizes) {
  auto s = JointScheme::FromLambdas(lambdas, sizes);
  EXPECT_TRUE(s.ok()) << s.status();
  return *std::move(s);
}

TEST(JointSchemeTest, CreateValidates) {
  EXPECT_FALSE(JointScheme::Create({}).ok());
  EXPECT_FALSE(
      JointScheme::FromLambdas(std::vector<double>{0.5}, std::vector<int>{2, 3})
          .ok());
  EXPECT_FALSE(JointScheme::FromLambdas(std::vector<double>{0.5, 0.0},
                                        std::vector<int>{2, 3})
                   .ok());
  EXPECT_EQ(Scheme({0.5, 0.6}, {2, 3}).shape(), (std::vector<int>{2, 3}));
}

TEST(JointSchemeTest, EntropyExamples) {
  EXPECT_EQ(Scheme({1, 1, 1}, {3, 4, 5}).EntropyRate(), 0.0);
  EXPECT_NEAR(Scheme({0.8, 0.4}, {2, 2}).EntropyRate(), kPairBits, 1e-12);
  EXPECT_NEAR(Scheme({0.3, 0.2, 0.1}, {5, 5, 5}).EntropyRate(), kLowTripleBits,
              5e-5);
}

TEST(JointSchemeTest, EntropyMatchesDenseKroneckerRow) {
  const JointScheme s = Scheme({0.8, 0.4}, {2, 2});
  auto dense = oracle::DenseEntropyRate(testing::DenseOf(s));
  ASSERT_TRUE(dense.ok());
  EXPECT_NEAR(s.EntropyRate(), *dense, 1e-12);
}

TEST(JointSchemeTest, StrengthExamples) {
  EXPECT_EQ(Scheme({1, 1}, {4, 4}).Strength(), 0.0);
  EXPECT_NEAR(Scheme({0.3, 0.2, 0.1}, {5, 5, 5}).Strength(), 0.95147, 5e-6);
  EXPECT_NEAR(Scheme({0.9, 0.8, 0.7}, {5, 5, 5}).Strength(), 0.40075, 5e-6);
  EXPECT_NEAR(Scheme({0.6, 0.7, 0.4}, {5, 5, 5}).Strength(), 0.68596, 5e-6);
}

TEST(JointSchemeTest, StrengthIsBitWeightedAverage) {
  const JointScheme s = Scheme({0.25, 0.75, 0.5}, {7, 2, 3});
  double bits = 0, max_bits = 0;
  for (const LambdaMatrix& f : s.factors()) {
    bits += f.EntropyRate();
    max_bits += std::log2(f.size());
  }
  EXPECT_DOUBLE_EQ(s.Strength(), bits / max_bits);
  EXPECT_DOUBLE_EQ(s.MaxEntropyRate(), max_bits);
}

TEST(JointSchemeTest, DiagonalTruthfulness) {
  EXPECT_NEAR(Scheme({0.8, 0.4}, {2, 2}).DiagonalTruthfulness(), 0.63, 1e-15);
  EXPECT_EQ(Scheme({1, 1}, {2, 9}).DiagonalTruthfulness(), 1.0);
  EXPECT_NEAR(Scheme({0.6, 0.7, 0.4}, {5, 5, 5}).DiagonalTruthfulness(),
              0.68 * 0.76 * 0.52, 1e-15);
  const JointScheme s = Scheme({0.6, 0.7, 0.4}, {5, 5, 5});
  const auto dense = testing::DenseOf(s);
  double lo = 1, hi = 0;
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    lo = std::min(lo, dense(i, i));
    hi = std::max(hi, dense(i, i));
  }
  EXPECT_NEAR(lo, s.DiagonalTruthfulness(), 1e-15);
  EXPECT_NEAR(hi, s.DiagonalTruthfulness(), 1e-15);
}

TEST(JointSchemeTest, OneHotUnderPairScheme) {
  const JointScheme s = Scheme({0.8, 0.4}, {2, 2});
  auto t = ContingencyTensor::FromCells({2, 2}, {1, 0, 0, 0});
  auto out = s.Apply(*t);
  ASSERT_TRUE(out.ok());
  EXPECT_THAT(testing::ToVector(out->cells()),
              ElementsAre(DoubleNear(0.63, 1e-15), DoubleNear(0.27, 1e-15),
                          DoubleNear(0.07, 1e-15), DoubleNear(0.03, 1e-15)));
}

TEST(JointSchemeTest, AllOnesLeavesTensorUnchanged) {
  std::mt19937_64 rng(21);
  const JointScheme s = Scheme({1, 1, 1}, {2, 3, 4});
  const ContingencyTensor t = testing::RandomTensor(rng, {2, 3, 4});
  EXPECT_TRUE(std::ranges::equal(s.Apply(t)->cells(), t.cells()));
  EXPECT_TRUE(std::ranges::equal(s.ApplyInverse(t)->cells(), t.cells()));
}

TEST(JointSchemeTest, ApplyAndInverseMatchDenseOracle) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = testing::UniformInt(rng, 1, 3);
    std::vector<double> lambdas;
    std::vector<int> sizes;
    for (int i = 0; i < m; ++i) {
      lambdas.push_back(testing::Uniform(rng, 0.05, 1.0));
      sizes.push_back(testing::UniformInt(rng, 2, 4));
    }
    const JointScheme s = Scheme(lambdas, sizes);
    const auto dense = testing::DenseOf(s);
    auto inv = oracle::DenseInvert(dense);
    ASSERT_TRUE(inv.ok());
    const ContingencyTensor t = testing::RandomTensor(rng, sizes);
    EXPECT_LE(testing::MaxAbsDiff(s.Apply(t)->cells(),
                                  oracle::Multiply(dense, t.cells())),
              1e-10);
    EXPECT_LE(testing::MaxAbsDiff(s.ApplyInverse(t)->cells(),
                                  oracle::Multiply(*inv, t.cells())),
              1e-10);
    EXPECT_LE(
        testing::MaxAbsDiff(s.ApplyInverse(*s.Apply(t))->cells(), t.cells()),
        1e-10);
  }
}

TEST(JointSchemeTest, ShapeMismatchIsAnError) {
  const JointScheme s = Scheme({0.5, 0.5}, {2, 3});
  auto t = ContingencyTensor::Zeros({3, 2});
  EXPECT_FALSE(s.Apply(*t).ok());
  EXPECT_FALSE(s.ApplyInverse(*t).ok());
  auto wrong_rank = ContingencyTensor::Zeros({6});
  EXPECT_FALSE(s.Apply(*wrong_rank).ok());
}

TEST(JointSchemeTest, ApplyPreservesMass) {
  std::mt19937_64 rng(23);
  const JointScheme s = Scheme({0.3, 0.9, 0.5}, {3, 5, 2});
  auto t =
      ContingencyTensor::FromCells({3, 5, 2}, testing::RandomSimplex(rng, 30));
  EXPECT_NEAR(s.Apply(*t)->Sum(), 1.0, 1e-12);
  EXPECT_NEAR(s.ApplyInverse(*t)->Sum(), 1.0, 1e-12);
}

TEST(InverseTermsTest, SixSevenFourCoefficients) {
  const JointScheme s = Scheme({0.6, 0.7, 0.4}, {5, 5, 5});
  auto terms = s.InverseTerms();
  ASSERT_TRUE(terms.ok());
  ASSERT_EQ(terms->size(), 8u);
  auto find = [&](std::vector<std::uint8_t> eps) {
    for (const InverseTerm& t : *terms) {
      if (t.epsilon == eps) return t.coefficient;
    }
    ADD_FAILURE() << "missing term";
    return 0.0;
  };
  EXPECT_EQ(find({0, 0, 0}), 1.0);
  EXPECT_NEAR(find({1, 0, 0}), 1 / 0.6, 1e-15);
  EXPECT_NEAR(find({1, 1, 0}), 1 / (0.6 * 0.7), 1e-14);
  EXPECT_NEAR(find({1, 1, 1}), 1 / (0.6 * 0.7 * 0.4), 1e-14);
  EXPECT_NEAR(find({1, 1, 1}), 5.952, 5e-4);
  std::vector<int> group_sizes(4, 0);
  for (const InverseTerm& t : *terms) ++group_sizes[t.Weight()];
  EXPECT_THAT(group_sizes, ElementsAre(1, 3, 3, 1));
}

TEST(InverseTermsTest, IdentityAllOnesBasis) {
  const JointScheme s = Scheme({0.6, 0.7, 0.4}, {5, 5, 5});
  auto terms = s.InverseTerms(InverseBasis::kIdentityAllOnes);
  ASSERT_TRUE(terms.ok());
  for (const InverseTerm& t : *terms) {
    if (t.epsilon == std::vector<std::uint8_t>{1, 0, 0}) {
      // Frozen: -(1 - 0.6) / (0.6 * 5) * (1 / 0.7) * (1 / 0.4).
      EXPECT_NEAR(t.coefficient, -0.4761904761904762, 1e-15);
    }
  }
}

TEST(InverseTermsTest, SingleIdentityFactor) {
  auto terms = Scheme({1.0}, {3}).InverseTerms();
  ASSERT_TRUE(terms.ok());
  ASSERT_EQ(terms->size(), 2u);
  EXPECT_EQ((*terms)[0].coefficient, 1.0);
  EXPECT_EQ((*terms)[1].coefficient, 1.0);
}

TEST(InverseTermsTest, TermSumsReconstructInverse) {
  for (const JointScheme& s :
       {Scheme({0.6, 0.7, 0.4}, {5, 5, 5}), Scheme({0.25, 0.9}, {3, 4}),
        Scheme({1.0, 0.05}, {2, 3})}) {
    auto inv = oracle::DenseInvert(testing::DenseOf(s));
    ASSERT_TRUE(inv.ok());
    for (InverseBasis basis :
         {InverseBasis::kCenteredUniform, InverseBasis::kIdentityAllOnes}) {
      auto terms = s.InverseTerms(basis);
      ASSERT_TRUE(terms.ok());
      oracle::DenseMatrix sum(inv->rows(), inv->cols());
      for (const InverseTerm& t : *terms) {
        std::vector<oracle::DenseMatrix> parts;
        for (int i = 0; i < s.num_attributes(); ++i) {
          const std::size_t n = s.factor(i).size();
          const auto id = oracle::DenseMatrix::Identity(n);
          const auto u = oracle::DenseMatrix::Uniform(n);
          if (basis == InverseBasis::kCenteredUniform) {
            parts.push_back(t.epsilon[i] ? oracle::Subtract(id, u) : u);
          } else {
            parts.push_back(t.epsilon[i] ? oracle::Scale(u, double(n)) : id);
          }
        }
        sum = oracle::Add(
            sum, oracle::Scale(*oracle::DenseKron(parts), t.coefficient));
      }
      EXPECT_LE(oracle::MaxAbsDifference(sum, *inv), 1e-9);
    }
  }
}

TEST(InverseTermsTest, RefusesTooManyAttributes) {
  std::vector<double> lambdas(kMaxExpansionAttributes + 1, 0.5);
  std::vector<int> sizes(kMaxExpansionAttributes + 1, 2);
  auto s = JointScheme::FromLambdas(lambdas, sizes);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->InverseTerms().status().code(),
            absl::StatusCode::kResourceExhausted);
}

}  // namespace
}  // namespace lambdarr
