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

#ifndef LAMBDARR_ESTIMATE_H_
#define LAMBDARR_ESTIMATE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdarr/dataset.h"
#include "lambdarr/joint_scheme.h"
#include "lambdarr/lambda_matrix.h"
#include "lambdarr/tensor.h"

namespace lambdarr {

// Observed joint frequencies: cell = (# records in the cell) / (# records).
absl::StatusOr<ContingencyTensor> EmpiricalJoint(
    std::span<const Record> records, std::span<const int> shape,
    std::size_t max_cells = kDefaultTensorCellCap);

// Unbiased estimate of the true joint distribution from observed
// frequencies: pi_hat = (P_0 (x) ... (x) P_{m-1})^-1 theta_hat. The lambda
// matrices are symmetric, so no transpose is needed. Cells may come out
// negative; they are left as-is.
absl::StatusOr<ContingencyTensor> EstimateTrueJoint(
    const JointScheme& scheme, const ContingencyTensor& theta_hat);

// Same estimate for one attribute's observed marginal. Equals the matching
// marginal of EstimateTrueJoint.
absl::StatusOr<std::vector<double>> EstimateMarginal(
    const LambdaMatrix& factor, std::span<const double> theta_hat_marginal);

struct SimplexProjection {
  ContingencyTensor tensor;
  bool projected;  // false when the input was already nonnegative.
};

// Clips negative cells to zero and rescales to sum one. This gives up
// unbiasedness for a feasible distribution, so nothing calls it implicitly.
// Input must sum to 1 within 1e-6.
absl::StatusOr<SimplexProjection> ProjectToSimplex(
    const ContingencyTensor& pi_hat);

// Covariance between two numeric attributes after TransformNumeric with
// lambda_a and lambda_b: lambda_a * lambda_b * cov_xy. Exact for the
// deterministic transform, since the uniform part annihilates centered
// vectors.
absl::StatusOr<double> PredictCovariance(double lambda_a, double lambda_b,
                                         double cov_xy);

// Population covariance (divides by n).
double Covariance(std::span<const double> x, std::span<const double> y);

}  // namespace lambdarr

#endif  // LAMBDARR_ESTIMATE_H_
