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

#include "lambdarr/oracle.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"

namespace lambdarr::oracle {

DenseMatrix DenseMatrix::Identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::Uniform(std::size_t n) {
  return DenseMatrix(n, n, 1.0 / static_cast<double>(n));
}

absl::StatusOr<DenseMatrix> DenseMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return DenseMatrix();
  DenseMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      return absl::InvalidArgumentError("ragged rows");
    }
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

DenseMatrix Add(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

DenseMatrix Subtract(const DenseMatrix& a, const DenseMatrix& b) {
  return Add(a, Scale(b, -1.0));
}

DenseMatrix Scale(const DenseMatrix& a, double s) {
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

DenseMatrix Multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double x = a(r, k);
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += x * b(k, c);
    }
  }
  return out;
}

std::vector<double> Multiply(const DenseMatrix& a, std::span<const double> x) {
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

double MaxAbsDifference(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

DenseMatrix LambdaForm(double lambda, std::size_t n) {
  return Add(Scale(DenseMatrix::Identity(n), lambda),
             Scale(DenseMatrix::Uniform(n), 1.0 - lambda));
}

absl::StatusOr<DenseMatrix> DenseKron(const DenseMatrix& a,
                                      const DenseMatrix& b,
                                      std::size_t dimension_cap) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > dimension_cap || cols > dimension_cap) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "Kronecker product would be %dx%d; the oracle cap is %d", rows, cols,
        dimension_cap));
  }
  DenseMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

absl::StatusOr<DenseMatrix> DenseKron(std::span<const DenseMatrix> factors,
                                      std::size_t dimension_cap) {
  if (factors.empty()) {
    return absl::InvalidArgumentError("no factors");
  }
  DenseMatrix acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) {
    auto next = DenseKron(acc, factors[i], dimension_cap);
    if (!next.ok()) return next.status();
    acc = *std::move(next);
  }
  return acc;
}

absl::StatusOr<DenseMatrix> DenseInvert(const DenseMatrix& a) {
  constexpr double kPivotThreshold = 1e-12;
  if (a.rows() != a.cols()) {
    return absl::InvalidArgumentError("cannot invert a non-square matrix");
  }
  const std::size_t n = a.rows();
  DenseMatrix work = a;
  DenseMatrix inv = DenseMatrix::Identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    }
    const double p = work(pivot, col);
    if (std::abs(p) < kPivotThreshold) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "matrix is singular to tolerance: pivot %.3e in column %d", p, col));
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const double scale = 1.0 / p;
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = work(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

absl::StatusOr<double> DenseEntropyRate(const DenseMatrix& a) {
  if (a.rows() == 0) return absl::InvalidArgumentError("empty matrix");
  double total = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double row_sum = 0.0;
    double h = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const double p = a(r, c);
      if (p < 0.0) {
        return absl::InvalidArgumentError(
            absl::StrFormat("negative entry %.17g at (%d,%d)", p, r, c));
      }
      row_sum += p;
      if (p > 0.0) h -= p * std::log(p);
    }
    if (std::abs(row_sum - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "row %d sums to %.17g; not row-stochastic", r, row_sum));
    }
    total += h / std::log(2.0);
  }
  return total / static_cast<double>(a.rows());
}

BistochasticCheck DenseBistochasticCheck(const DenseMatrix& a, double tol) {
  if (a.rows() != a.cols()) {
    return {false,
            absl::StrFormat("matrix is %dx%d, not square", a.rows(), a.cols())};
  }
  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (a(r, c) < -tol) {
        return {false, absl::StrFormat("entry (%d,%d) = %.17g is negative", r,
                                       c, a(r, c))};
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += a(r, c);
    if (std::abs(s - 1.0) > tol) {
      return {false, absl::StrFormat("row %d sums to %.17g", r, s)};
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += a(r, c);
    if (std::abs(s - 1.0) > tol) {
      return {false, absl::StrFormat("column %d sums to %.17g", c, s)};
    }
  }
  return {true, ""};
}

}  // namespace lambdarr::oracle
