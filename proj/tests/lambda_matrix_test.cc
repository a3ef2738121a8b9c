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

#include "lambdarr/lambda_matrix.h"

#include <cmath>
#include <random>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lambdarr/oracle.h"
#include "test_util.h"

namespace lambdarr {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

// Frozen from an independent numpy computation of the row entropy
// -sum p log2 p of the dense matrix.
constexpr double kEntropy02n5 = 2.222683189255492;
constexpr double kEntropy05n4 = 1.5487949406953985;
// Root of strength(lambda, 5) = 0.957 by scipy brentq.
constexpr double kSolved0957n5 = 0.2006380610384723;

TEST(LambdaMatrixTest, CreateRejectsOutOfRange) {
  EXPECT_FALSE(LambdaMatrix::Create(0.0, 3).ok());
  EXPECT_FALSE(LambdaMatrix::Create(-0.1, 3).ok());
  EXPECT_FALSE(LambdaMatrix::Create(1.0000001, 3).ok());
  EXPECT_FALSE(LambdaMatrix::Create(std::nan(""), 3).ok());
  EXPECT_FALSE(LambdaMatrix::Create(0.5, 1).ok());
  EXPECT_TRUE(LambdaMatrix::Create(1.0, 2).ok());
}

TEST(LambdaMatrixTest, MinLambdaFloorIsConfigurable) {
  EXPECT_EQ(LambdaMatrix::Create(1e-7, 3).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_TRUE(LambdaMatrix::Create(1e-7, 3, 1e-8).ok());
}

TEST(LambdaMatrixTest, IdentityAtLambdaOne) {
  auto m = LambdaMatrix::Create(1.0, 5);
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(m->entry(2, 2), 1.0);
  EXPECT_EQ(m->entry(2, 3), 0.0);
}

TEST(LambdaMatrixTest, Entries) {
  auto m = LambdaMatrix::Create(0.9, 5);
  ASSERT_TRUE(m.ok());
  EXPECT_NEAR(m->diagonal(), 0.92, 1e-15);
  EXPECT_NEAR(m->off_diagonal(), 0.02, 1e-15);
}

TEST(LambdaMatrixTest, DenseMatchesPairMatrices) {
  auto a = LambdaMatrix::Create(0.8, 2)->Dense();
  ASSERT_TRUE(a.ok());
  EXPECT_THAT(testing::ToVector(a->entries()),
              ElementsAre(DoubleNear(0.9, 1e-15), DoubleNear(0.1, 1e-15),
                          DoubleNear(0.1, 1e-15), DoubleNear(0.9, 1e-15)));
  auto b = LambdaMatrix::Create(0.4, 2)->Dense();
  ASSERT_TRUE(b.ok());
  EXPECT_THAT(testing::ToVector(b->entries()),
              ElementsAre(DoubleNear(0.7, 1e-15), DoubleNear(0.3, 1e-15),
                          DoubleNear(0.3, 1e-15), DoubleNear(0.7, 1e-15)));
  auto c = LambdaMatrix::Create(1.0, 3)->Dense();
  ASSERT_TRUE(c.ok());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ((*c)(i, j), i == j ? 1 : 0);
  }
}

TEST(LambdaMatrixTest, DenseRespectsCap) {
  auto m = LambdaMatrix::Create(0.5, 100);
  EXPECT_EQ(m->Dense(9999).status().code(),
            absl::StatusCode::kResourceExhausted);
  EXPECT_TRUE(m->Dense(10000).ok());
}

TEST(LambdaMatrixTest, ApplyAndInverseExamples) {
  auto m = LambdaMatrix::Create(0.4, 3);
  auto forward = m->Apply(std::vector<double>{1, 0, 0});
  ASSERT_TRUE(forward.ok());
  EXPECT_THAT(*forward,
              ElementsAre(DoubleNear(0.6, 1e-15), DoubleNear(0.2, 1e-15),
                          DoubleNear(0.2, 1e-15)));
  auto back = m->ApplyInverse(std::vector<double>{0.6, 0.2, 0.2});
  ASSERT_TRUE(back.ok());
  EXPECT_THAT(*back, ElementsAre(DoubleNear(1, 1e-14), DoubleNear(0, 1e-14),
                                 DoubleNear(0, 1e-14)));
}

TEST(LambdaMatrixTest, ApplyRejectsLengthMismatch) {
  auto m = LambdaMatrix::Create(0.4, 3);
  EXPECT_FALSE(m->Apply(std::vector<double>{1, 0}).ok());
  EXPECT_FALSE(m->ApplyInverse(std::vector<double>{1, 0, 0, 0}).ok());
}

TEST(LambdaMatrixTest, IdentityInverseLeavesVectorUnchanged) {
  auto m = LambdaMatrix::Create(1.0, 4);
  const std::vector<double> v = {0.3, -2, 7, 1e-9};
  EXPECT_EQ(*m->ApplyInverse(v), v);
  EXPECT_EQ(*m->Apply(v), v);
}

TEST(LambdaMatrixTest, DenseInverseOfHalfByTwo) {
  auto m = LambdaMatrix::Create(0.5, 2);
  // Columns of the inverse are the inverse applied to unit vectors.
  auto c0 = m->ApplyInverse(std::vector<double>{1, 0});
  auto c1 = m->ApplyInverse(std::vector<double>{0, 1});
  EXPECT_THAT(*c0,
              ElementsAre(DoubleNear(1.5, 1e-15), DoubleNear(-0.5, 1e-15)));
  EXPECT_THAT(*c1,
              ElementsAre(DoubleNear(-0.5, 1e-15), DoubleNear(1.5, 1e-15)));
}

TEST(LambdaMatrixTest, ApplyMatchesDenseOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = testing::Uniform(rng, 0.05, 1.0);
    const int n = testing::UniformInt(rng, 2, 30);
    auto m = LambdaMatrix::Create(lambda, n);
    ASSERT_TRUE(m.ok());
    const auto v = testing::RandomVector(rng, n);
    const auto dense = oracle::LambdaForm(lambda, n);
    EXPECT_LE(testing::MaxAbsDiff(*m->Apply(v), oracle::Multiply(dense, v)),
              1e-13);
    auto inv = oracle::DenseInvert(dense);
    ASSERT_TRUE(inv.ok());
    EXPECT_LE(
        testing::MaxAbsDiff(*m->ApplyInverse(v), oracle::Multiply(*inv, v)),
        1e-10);
  }
}

TEST(LambdaMatrixTest, EntropyValues) {
  EXPECT_EQ(LambdaMatrix::Create(1.0, 7)->EntropyRate(), 0.0);
  EXPECT_NEAR(LambdaMatrix::Create(0.2, 5)->EntropyRate(), kEntropy02n5, 1e-12);
  EXPECT_NEAR(LambdaMatrix::Create(0.5, 4)->EntropyRate(), kEntropy05n4, 1e-12);
}

TEST(LambdaMatrixTest, StrengthValues) {
  EXPECT_EQ(LambdaMatrix::Create(1.0, 3)->Strength(), 0.0);
  // Table values at n = 5 (rounded percentages 96, 99, 24).
  EXPECT_NEAR(LambdaMatrix::Create(0.2, 5)->Strength(), 0.9573, 5e-5);
  EXPECT_NEAR(LambdaMatrix::Create(0.1, 5)->Strength(), 0.9886, 5e-5);
  EXPECT_NEAR(LambdaMatrix::Create(0.9, 5)->Strength(), 0.2421, 5e-5);
}

TEST(LambdaMatrixTest, EntropyMatchesDenseOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = testing::Uniform(rng, 0.01, 1.0);
    const int n = testing::UniformInt(rng, 2, 40);
    auto dense = oracle::DenseEntropyRate(oracle::LambdaForm(lambda, n));
    ASSERT_TRUE(dense.ok());
    EXPECT_NEAR(LambdaEntropyRate(lambda, n), *dense, 1e-10);
  }
}

TEST(LambdaMatrixTest, StrengthIsMonotoneInLambda) {
  for (int n : {2, 5, 17}) {
    double previous = 1.0;
    for (double lambda = 0.01; lambda <= 1.0; lambda += 0.01) {
      const double s = LambdaMatrix::Create(lambda, n)->Strength();
      EXPECT_LT(s, previous + 1e-15) << "lambda " << lambda << " n " << n;
      previous = s;
    }
  }
}

TEST(SolveLambdaTest, Examples) {
  EXPECT_EQ(*SolveLambda(0.0, 5), 1.0);
  EXPECT_NEAR(*SolveLambda(0.957, 5), kSolved0957n5, 1e-9);
  const double l = *SolveLambda(0.5, 4);
  EXPECT_NEAR(LambdaMatrix::Create(l, 4)->Strength(), 0.5, 1e-9);
}

TEST(SolveLambdaTest, RejectsUnreachableTargets) {
  auto full = SolveLambda(1.0, 5);
  EXPECT_FALSE(full.ok());
  EXPECT_THAT(std::string(full.status().message()), HasSubstr("lambda = 0"));
  EXPECT_FALSE(SolveLambda(-0.1, 5).ok());
  EXPECT_FALSE(SolveLambda(0.5, 1).ok());
}

TEST(SolveLambdaTest, RoundTripProperty) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const double beta = testing::Uniform(rng, 0.0, 0.999);
    const int n = testing::UniformInt(rng, 2, 50);
    auto l = SolveLambda(beta, n);
    ASSERT_TRUE(l.ok()) << beta << " " << n;
    EXPECT_NEAR(LambdaEntropyRate(*l, n) / std::log2(n), beta, 1e-9);
  }
}

TEST(DenseBistochasticTest, Validation) {
  EXPECT_TRUE(DenseBistochastic::Create(2, {0.9, 0.1, 0.1, 0.9}).ok());
  EXPECT_FALSE(DenseBistochastic::Create(2, {0.9, 0.2, 0.1, 0.8}).ok());
  // A zero entry is rejected by default and accepted when allowed.
  EXPECT_FALSE(DenseBistochastic::Create(2, {1, 0, 0, 1}).ok());
  EXPECT_TRUE(DenseBistochastic::Create(
                  2, {1, 0, 0, 1},
                  {.tolerance = 1e-9, .require_strictly_positive = false})
                  .ok());
  EXPECT_FALSE(DenseBistochastic::Create(2, {0.5, 0.5, 0.5}).ok());
}

TEST(ExtractIdentityWeightTest, LambdaFormRecoversDiagonal) {
  auto dense = LambdaMatrix::Create(0.6, 3)->Dense();
  auto w = ExtractIdentityWeight(*dense);
  ASSERT_TRUE(w.ok());
  EXPECT_NEAR(w->lambda, 0.6 + 0.4 / 3, 1e-15);
  ASSERT_TRUE(w->residual.has_value());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR((*w->residual)(i, i), 0.0, 1e-12);
    for (std::size_t j = 0; j < 3; ++j) {
      const double rebuilt =
          (i == j ? w->lambda : 0.0) + (1 - w->lambda) * (*w->residual)(i, j);
      EXPECT_NEAR(rebuilt, (*dense)(i, j), 1e-12);
    }
  }
}

TEST(ExtractIdentityWeightTest, PairMatrixLeavesSwap) {
  auto d = DenseBistochastic::Create(2, {0.9, 0.1, 0.1, 0.9});
  auto w = ExtractIdentityWeight(*d);
  ASSERT_TRUE(w.ok());
  EXPECT_NEAR(w->lambda, 0.9, 1e-15);
  EXPECT_THAT(testing::ToVector(w->residual->entries()),
              ElementsAre(DoubleNear(0, 1e-12), DoubleNear(1, 1e-12),
                          DoubleNear(1, 1e-12), DoubleNear(0, 1e-12)));
}

TEST(ExtractIdentityWeightTest, UniformAndIdentity) {
  const int n = 4;
  auto u = DenseBistochastic::Create(n, std::vector<double>(n * n, 0.25));
  auto w = ExtractIdentityWeight(*u);
  ASSERT_TRUE(w.ok());
  EXPECT_NEAR(w->lambda, 0.25, 1e-15);
  ASSERT_TRUE(w->residual.has_value());

  auto id = DenseBistochastic::Create(2, {1, 0, 0, 1},
                                      {.require_strictly_positive = false});
  auto wi = ExtractIdentityWeight(*id);
  ASSERT_TRUE(wi.ok());
  EXPECT_EQ(wi->lambda, 1.0);
  EXPECT_FALSE(wi->residual.has_value());
}

TEST(ExtractIdentityWeightTest, ZeroDiagonalIsAnError) {
  auto swap = DenseBistochastic::Create(2, {0, 1, 1, 0},
                                        {.require_strictly_positive = false});
  ASSERT_TRUE(swap.ok());
  EXPECT_FALSE(ExtractIdentityWeight(*swap).ok());
}

TEST(ReadDenseBistochasticCsvTest, ParsesGrid) {
  std::istringstream in("0.9,0.1\n0.1,0.9\n");
  auto d = ReadDenseBistochasticCsv(in, {});
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_EQ(d->size(), 2u);
  std::istringstream ragged("0.9,0.1\n1\n");
  EXPECT_FALSE(ReadDenseBistochasticCsv(ragged, {}).ok());
  std::istringstream bad("0.9,x\n0.1,0.9\n");
  EXPECT_FALSE(ReadDenseBistochasticCsv(bad, {}).ok());
}

}  // namespace
}  // namespace lambdarr
