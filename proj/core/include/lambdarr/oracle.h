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

// Brute-force dense reference algebra. Nothing here calls into the
// closed-form code paths (LambdaMatrix, JointScheme); agreement between the
// two is what the verification suite checks.

#ifndef LAMBDARR_ORACLE_H_
#define LAMBDARR_ORACLE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace lambdarr::oracle {

// Default cap on rows and columns of any matrix the oracle builds.
inline constexpr std::size_t kDefaultDimensionCap = 512;

// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix Identity(std::size_t n);
  // Every entry 1/n.
  static DenseMatrix Uniform(std::size_t n);
  static absl::StatusOr<DenseMatrix> FromRows(
      const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix Add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix Subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix Scale(const DenseMatrix& a, double s);
DenseMatrix Multiply(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> Multiply(const DenseMatrix& a, std::span<const double> x);
double MaxAbsDifference(const DenseMatrix& a, const DenseMatrix& b);

// lambda * I + (1 - lambda) * Uniform(n), assembled entrywise from the
// definition.
DenseMatrix LambdaForm(double lambda, std::size_t n);

// Standard Kronecker product; fails if either result dimension exceeds
// `dimension_cap`.
absl::StatusOr<DenseMatrix> DenseKron(
    const DenseMatrix& a, const DenseMatrix& b,
    std::size_t dimension_cap = kDefaultDimensionCap);
// Left fold a_0 (x) a_1 (x) ...
absl::StatusOr<DenseMatrix> DenseKron(
    std::span<const DenseMatrix> factors,
    std::size_t dimension_cap = kDefaultDimensionCap);

// Gauss-Jordan elimination with partial pivoting. Fails when a pivot's
// magnitude drops below 1e-12 and reports it.
absl::StatusOr<DenseMatrix> DenseInvert(const DenseMatrix& a);

// Mean over rows of the base-2 Shannon entropy (0 log 0 = 0). Rows must each
// sum to 1 within 1e-9 with no negative entries.
absl::StatusOr<double> DenseEntropyRate(const DenseMatrix& a);

struct BistochasticCheck {
  bool ok;
  std::string diagnostic;  // Empty when ok; otherwise the first violation.
};

// Square, every entry >= -tol, every row and column sum within tol of 1.
BistochasticCheck DenseBistochasticCheck(const DenseMatrix& a, double tol);

}  // namespace lambdarr::oracle

#endif  // LAMBDARR_ORACLE_H_
