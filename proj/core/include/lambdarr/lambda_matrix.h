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

#ifndef LAMBDARR_LAMBDA_MATRIX_H_
#define LAMBDARR_LAMBDA_MATRIX_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace lambdarr {

// Smallest lambda accepted by default. The inverse scales deviations from the
// mean by 1/lambda, so sampling noise in observed frequencies blows up as
// lambda approaches zero.
inline constexpr double kDefaultMinLambda = 1e-6;

// Upper bound on the number of entries a dense n x n matrix may hold.
inline constexpr std::size_t kDefaultDenseEntryCap = 100'000'000;

// Row/column sum tolerance for matrices read from outside the library.
inline constexpr double kInputBistochasticTolerance = 1e-9;

// A square matrix with nonnegative entries whose rows and columns all sum to
// one. Strict positivity (every entry > 0) is checked on request; the
// residual produced by ExtractIdentityWeight has zeros on its diagonal.
class DenseBistochastic {
 public:
  struct Options {
    double tolerance = kInputBistochasticTolerance;
    bool require_strictly_positive = true;
  };

  // Validates `entries` (row-major, size x size).
  static absl::StatusOr<DenseBistochastic> Create(std::size_t size,
                                                  std::vector<double> entries,
                                                  const Options& options);
  static absl::StatusOr<DenseBistochastic> Create(std::size_t size,
                                                  std::vector<double> entries) {
    return Create(size, std::move(entries), Options());
  }

  std::size_t size() const { return size_; }
  double operator()(std::size_t row, std::size_t col) const {
    return entries_[row * size_ + col];
  }
  std::span<const double> entries() const { return entries_; }
  bool IsStrictlyPositive() const;

 private:
  DenseBistochastic(std::size_t size, std::vector<double> entries)
      : size_(size), entries_(std::move(entries)) {}

  std::size_t size_;
  std::vector<double> entries_;
};

// The single-parameter randomizer lambda * I + (1 - lambda) * U, where U is
// the n x n matrix with every entry 1/n. Only (lambda, n) is stored; every
// operation runs in O(n) or O(1).
//
// The matrix is symmetric, so applying it to a column vector and applying its
// transpose coincide.
class LambdaMatrix {
 public:
  // Fails unless min_lambda <= lambda <= 1 and size >= 2. `min_lambda` must
  // itself be positive.
  static absl::StatusOr<LambdaMatrix> Create(
      double lambda, int size, double min_lambda = kDefaultMinLambda);

  double lambda() const { return lambda_; }
  int size() const { return size_; }

  // Probability a category is reported unchanged.
  double diagonal() const { return lambda_ + (1.0 - lambda_) / size_; }
  double off_diagonal() const { return (1.0 - lambda_) / size_; }
  double entry(int row, int col) const {
    return row == col ? diagonal() : off_diagonal();
  }

  // v <- lambda * v + (1 - lambda) * mean(v).
  absl::Status ApplyInPlace(std::span<double> v) const;
  absl::StatusOr<std::vector<double>> Apply(std::span<const double> v) const;

  // v <- (v - mean(v)) / lambda + mean(v). Exact inverse of Apply.
  absl::Status ApplyInverseInPlace(std::span<double> v) const;
  absl::StatusOr<std::vector<double>> ApplyInverse(
      std::span<const double> v) const;

  // Shannon entropy (bits) of one row; all rows are equal so this is also
  // the entropy rate. Uses 0 * log2(0) = 0.
  double EntropyRate() const;

  // EntropyRate() / log2(size): the fraction of the maximum entropy spent.
  double Strength() const;

  absl::StatusOr<DenseBistochastic> Dense(
      std::size_t max_entries = kDefaultDenseEntryCap) const;

  friend bool operator==(const LambdaMatrix&, const LambdaMatrix&) = default;

 private:
  LambdaMatrix(double lambda, int size) : lambda_(lambda), size_(size) {}

  double lambda_;
  int size_;
};

// Row entropy (bits) of LambdaMatrix(lambda, size) without validation.
double LambdaEntropyRate(double lambda, int size);

// Finds lambda in (0, 1] whose strength at `size` categories is within 1e-9
// of `beta_target`, by bisection. beta_target must lie in [0, 1); a target of
// 1 would need lambda = 0.
absl::StatusOr<double> SolveLambda(double beta_target, int size);

// Decomposition P = lambda * I + (1 - lambda) * R with lambda the smallest
// diagonal entry of P. `residual` is absent when P is the identity.
struct IdentityWeight {
  double lambda;
  std::optional<DenseBistochastic> residual;
};

absl::StatusOr<IdentityWeight> ExtractIdentityWeight(
    const DenseBistochastic& matrix);

// Reads a square numeric grid (comma-separated, no header).
absl::StatusOr<DenseBistochastic> ReadDenseBistochasticCsv(
    std::istream& in, const DenseBistochastic::Options& options);

}  // namespace lambdarr

#endif  // LAMBDARR_LAMBDA_MATRIX_H_
