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

#ifndef LAMBDARR_JOINT_SCHEME_H_
#define LAMBDARR_JOINT_SCHEME_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdarr/lambda_matrix.h"
#include "lambdarr/tensor.h"

namespace lambdarr {

// Upper bound on the number of attributes InverseTerms will expand.
inline constexpr int kMaxExpansionAttributes = 20;

// Which pair of matrices the terms of the inverse expansion are written in.
enum class InverseBasis {
  // Each factor is (I - U) for epsilon_i = 1 or U for epsilon_i = 0, where U
  // is the uniform matrix. The coefficient is the product of 1/lambda_i over
  // the factors with epsilon_i = 1.
  kCenteredUniform,
  // Each factor is I for epsilon_i = 0 or the all-ones matrix for
  // epsilon_i = 1. The coefficient is the product of 1/lambda_i for
  // epsilon_i = 0 and -(1 - lambda_i) / (lambda_i * n_i) for epsilon_i = 1.
  kIdentityAllOnes,
};

// One of the 2^m summands of the inverse of a Kronecker product of lambda
// matrices.
struct InverseTerm {
  std::vector<std::uint8_t> epsilon;
  double coefficient;

  int Weight() const;  // Number of ones in epsilon.
};

// Randomization of m attributes at once: P_0 (x) P_1 (x) ... (x) P_{m-1}.
// The Kronecker product is never formed; tensors are transformed one mode at
// a time, which costs O(N * m) for N joint cells.
class JointScheme {
 public:
  static absl::StatusOr<JointScheme> Create(std::vector<LambdaMatrix> factors);
  static absl::StatusOr<JointScheme> FromLambdas(
      std::span<const double> lambdas, std::span<const int> sizes,
      double min_lambda = kDefaultMinLambda);

  std::span<const LambdaMatrix> factors() const { return factors_; }
  const LambdaMatrix& factor(int i) const { return factors_[i]; }
  int num_attributes() const { return static_cast<int>(factors_.size()); }
  std::vector<int> shape() const;
  std::vector<double> lambdas() const;

  // Entropy of the joint randomizer: the sum of the per-factor rates.
  double EntropyRate() const;
  // Sum of log2(n_i), the entropy of the uniform joint randomizer.
  double MaxEntropyRate() const;
  double Strength() const;

  // Probability that a whole record is reported unchanged:
  // prod_i (lambda_i + (1 - lambda_i) / n_i).
  double DiagonalTruthfulness() const;

  // Returns (P_0 (x) ... (x) P_{m-1}) vec(T). Mass is preserved.
  absl::StatusOr<ContingencyTensor> Apply(const ContingencyTensor& t) const;
  absl::Status ApplyInPlace(ContingencyTensor& t) const;

  // Exact inverse of Apply, computed mode by mode from the closed-form
  // per-factor inverse.
  absl::StatusOr<ContingencyTensor> ApplyInverse(
      const ContingencyTensor& t) const;
  absl::Status ApplyInverseInPlace(ContingencyTensor& t) const;

  // All 2^m terms, epsilon enumerated as a binary counter with epsilon[0] the
  // most significant digit.
  absl::StatusOr<std::vector<InverseTerm>> InverseTerms(
      InverseBasis basis = InverseBasis::kCenteredUniform) const;

 private:
  explicit JointScheme(std::vector<LambdaMatrix> factors)
      : factors_(std::move(factors)) {}

  absl::Status CheckShape(const ContingencyTensor& t) const;

  std::vector<LambdaMatrix> factors_;
};

}  // namespace lambdarr

#endif  // LAMBDARR_JOINT_SCHEME_H_
