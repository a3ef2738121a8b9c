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

#include "lambdarr/estimate.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace lambdarr {

absl::StatusOr<ContingencyTensor> EmpiricalJoint(
    std::span<const Record> records, std::span<const int> shape,
    std::size_t max_cells) {
  if (records.empty()) {
    return absl::InvalidArgumentError(
        "cannot form frequencies from an empty dataset");
  }
  auto counts =
      ContingencyTensor::Zeros({shape.begin(), shape.end()}, max_cells);
  if (!counts.ok()) return counts.status();
  // Integer counts first so the result is independent of record order.
  std::vector<std::uint64_t> tally(counts->num_cells(), 0);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& v = records[r].values;
    if (v.size() != shape.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "record ", r, " has ", v.size(), " values, expected ", shape.size()));
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] < 0 || v[k] >= shape[k]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "record ", r, " attribute ", k, ": index ", v[k], " out of range"));
      }
    }
    ++tally[counts->FlatIndex(v)];
  }
  const double n = static_cast<double>(records.size());
  for (std::size_t c = 0; c < tally.size(); ++c) {
    (*counts)[c] = static_cast<double>(tally[c]) / n;
  }
  return counts;
}

absl::StatusOr<ContingencyTensor> EstimateTrueJoint(
    const JointScheme& scheme, const ContingencyTensor& theta_hat) {
  return scheme.ApplyInverse(theta_hat);
}

absl::StatusOr<std::vector<double>> EstimateMarginal(
    const LambdaMatrix& factor, std::span<const double> theta_hat_marginal) {
  return factor.ApplyInverse(theta_hat_marginal);
}

absl::StatusOr<SimplexProjection> ProjectToSimplex(
    const ContingencyTensor& pi_hat) {
  const double total = pi_hat.Sum();
  if (std::abs(total - 1.0) > 1e-6) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "estimate sums to %.17g; expected a distribution summing to 1", total));
  }
  ContingencyTensor out = pi_hat;
  bool any_negative = false;
  double positive_mass = 0.0;
  for (double& x : out.mutable_cells()) {
    if (x < 0.0) {
      x = 0.0;
      any_negative = true;
    }
    positive_mass += x;
  }
  if (!(positive_mass > 0.0)) {
    return absl::InvalidArgumentError(
        "every cell of the estimate is nonpositive; cannot project");
  }
  if (!any_negative) return SimplexProjection{std::move(out), false};
  for (double& x : out.mutable_cells()) x /= positive_mass;
  return SimplexProjection{std::move(out), true};
}

absl::StatusOr<double> PredictCovariance(double lambda_a, double lambda_b,
                                         double cov_xy) {
  for (double l : {lambda_a, lambda_b}) {
    if (!(l > 0.0) || l > 1.0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("lambda must lie in (0, 1], got %.17g", l));
    }
  }
  return lambda_a * lambda_b * cov_xy;
}

double Covariance(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - mx) * (y[i] - my);
  return acc / n;
}

}  // namespace lambdarr
