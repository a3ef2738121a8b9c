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

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "lambdarr/csv.h"

namespace lambdarr {

namespace {

// Tolerance for matrices this library builds itself.
constexpr double kInternalTolerance = 1e-12;

double Mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double PlogP(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

absl::Status CheckLength(std::size_t got, int want) {
  if (got != static_cast<std::size_t>(want)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "vector length ", got, " does not match matrix size ", want));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<DenseBistochastic> DenseBistochastic::Create(
    std::size_t size, std::vector<double> entries, const Options& options) {
  if (size == 0) {
    return absl::InvalidArgumentError("bistochastic matrix must be non-empty");
  }
  if (entries.size() != size * size) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", size * size, " entries for a ", size, "x",
                     size, " matrix, got ", entries.size()));
  }
  std::vector<double> col_sums(size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      const double x = entries[i * size + j];
      if (!std::isfinite(x)) {
        return absl::InvalidArgumentError(
            absl::StrCat("entry (", i, ",", j, ") is not finite"));
      }
      if (options.require_strictly_positive ? !(x > 0.0)
                                            : x < -options.tolerance) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "entry (%d,%d) = %.17g violates %s", i, j, x,
            options.require_strictly_positive ? "strict positivity"
                                              : "nonnegativity"));
      }
      row_sum += x;
      col_sums[j] += x;
    }
    if (std::abs(row_sum - 1.0) > options.tolerance) {
      return absl::InvalidArgumentError(
          absl::StrFormat("row %d sums to %.17g, not 1", i, row_sum));
    }
  }
  for (std::size_t j = 0; j < size; ++j) {
    if (std::abs(col_sums[j] - 1.0) > options.tolerance) {
      return absl::InvalidArgumentError(
          absl::StrFormat("column %d sums to %.17g, not 1", j, col_sums[j]));
    }
  }
  return DenseBistochastic(size, std::move(entries));
}

bool DenseBistochastic::IsStrictlyPositive() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](double x) { return x > 0.0; });
}

absl::StatusOr<LambdaMatrix> LambdaMatrix::Create(double lambda, int size,
                                                  double min_lambda) {
  if (!(min_lambda > 0.0)) {
    return absl::InvalidArgumentError("min_lambda must be positive");
  }
  if (size < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("matrix size must be at least 2, got ", size));
  }
  if (!(lambda > 0.0) || lambda > 1.0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "lambda must lie in (0, 1], got %.17g; the inverse does not exist "
        "at lambda = 0",
        lambda));
  }
  if (lambda < min_lambda) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "lambda %.3g is below the configured floor %.3g; estimates would "
        "amplify sampling noise by 1/lambda",
        lambda, min_lambda));
  }
  return LambdaMatrix(lambda, size);
}

absl::Status LambdaMatrix::ApplyInPlace(std::span<double> v) const {
  if (auto s = CheckLength(v.size(), size_); !s.ok()) return s;
  const double shift = (1.0 - lambda_) * Mean(v);
  for (double& x : v) x = lambda_ * x + shift;
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> LambdaMatrix::Apply(
    std::span<const double> v) const {
  std::vector<double> out(v.begin(), v.end());
  if (auto s = ApplyInPlace(out); !s.ok()) return s;
  return out;
}

absl::Status LambdaMatrix::ApplyInverseInPlace(std::span<double> v) const {
  if (auto s = CheckLength(v.size(), size_); !s.ok()) return s;
  if (lambda_ == 1.0) return absl::OkStatus();  // keep the identity exact
  const double mean = Mean(v);
  const double scale = 1.0 / lambda_;
  for (double& x : v) x = (x - mean) * scale + mean;
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> LambdaMatrix::ApplyInverse(
    std::span<const double> v) const {
  std::vector<double> out(v.begin(), v.end());
  if (auto s = ApplyInverseInPlace(out); !s.ok()) return s;
  return out;
}

double LambdaEntropyRate(double lambda, int size) {
  const double n = static_cast<double>(size);
  const double diag = lambda + (1.0 - lambda) / n;
  const double off = (1.0 - lambda) / n;
  return -PlogP(diag) - (n - 1.0) * PlogP(off);
}

double LambdaMatrix::EntropyRate() const {
  return LambdaEntropyRate(lambda_, size_);
}

double LambdaMatrix::Strength() const {
  return EntropyRate() / std::log2(static_cast<double>(size_));
}

absl::StatusOr<DenseBistochastic> LambdaMatrix::Dense(
    std::size_t max_entries) const {
  const std::size_t n = static_cast<std::size_t>(size_);
  if (n > max_entries / n) {
    return absl::ResourceExhaustedError(
        absl::StrCat("dense ", n, "x", n, " matrix exceeds the cap of ",
                     max_entries, " entries"));
  }
  std::vector<double> entries(n * n, off_diagonal());
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = diagonal();
  DenseBistochastic::Options options;
  options.tolerance = kInternalTolerance;
  options.require_strictly_positive = false;
  return DenseBistochastic::Create(n, std::move(entries), options);
}

absl::StatusOr<double> SolveLambda(double beta_target, int size) {
  if (size < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("size must be at least 2, got ", size));
  }
  if (!(beta_target >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("beta must lie in [0, 1), got %.17g", beta_target));
  }
  if (beta_target >= 1.0) {
    return absl::InvalidArgumentError(
        "beta = 1 (perfect privacy) requires lambda = 0, where the "
        "randomization cannot be inverted; choose beta < 1");
  }
  if (beta_target == 0.0) return 1.0;

  const double max_bits = std::log2(static_cast<double>(size));
  auto beta = [&](double lambda) {
    return LambdaEntropyRate(lambda, size) / max_bits;
  };
  // beta is strictly decreasing in lambda: beta(0) = 1, beta(1) = 0.
  double lo = 0.0;
  double hi = 1.0;
  double mid = 0.5;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double b = beta(mid);
    if (std::abs(b - beta_target) <= 1e-12) break;
    if (b > beta_target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 0.0) break;
  }
  if (!(mid > 0.0) || std::abs(beta(mid) - beta_target) > 1e-9) {
    return absl::OutOfRangeError(absl::StrFormat(
        "no lambda in (0, 1] reaches beta = %.17g at %d categories",
        beta_target, size));
  }
  return mid;
}

absl::StatusOr<IdentityWeight> ExtractIdentityWeight(
    const DenseBistochastic& matrix) {
  const std::size_t n = matrix.size();
  double lambda = 1.0;
  for (std::size_t i = 0; i < n; ++i) lambda = std::min(lambda, matrix(i, i));
  if (!(lambda > 0.0)) {
    return absl::InvalidArgumentError(
        "matrix has a zero diagonal entry; the identity cannot carry positive "
        "weight");
  }
  if (lambda >= 1.0 - kInternalTolerance) {
    return IdentityWeight{1.0, std::nullopt};
  }
  std::vector<double> residual(n * n);
  const double scale = 1.0 / (1.0 - lambda);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double x = matrix(i, j);
      if (i == j) x -= lambda;
      residual[i * n + j] = x * scale;
    }
  }
  DenseBistochastic::Options options;
  options.require_strictly_positive = false;
  auto r = DenseBistochastic::Create(n, std::move(residual), options);
  if (!r.ok()) {
    return absl::InternalError(
        absl::StrCat("residual is not bistochastic: ", r.status().message()));
  }
  return IdentityWeight{lambda, *std::move(r)};
}

absl::StatusOr<DenseBistochastic> ReadDenseBistochasticCsv(
    std::istream& in, const DenseBistochastic::Options& options) {
  auto rows = ReadCsv(in);
  if (!rows.ok()) return rows.status();
  const std::size_t n = rows->size();
  if (n == 0) return absl::InvalidArgumentError("matrix CSV is empty");
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = (*rows)[i];
    if (row.size() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("matrix CSV line ", i + 1, " has ", row.size(),
                       " fields; a square grid needs ", n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      auto x = ParseDouble(row[j]);
      if (!x.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat("matrix CSV line ", i + 1, " field ", j + 1, ": ",
                         x.status().message()));
      }
      entries.push_back(*x);
    }
  }
  return DenseBistochastic::Create(n, std::move(entries), options);
}

}  // namespace lambdarr
