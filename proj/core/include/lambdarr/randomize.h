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

#ifndef LAMBDARR_RANDOMIZE_H_
#define LAMBDARR_RANDOMIZE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdarr/dataset.h"
#include "lambdarr/joint_scheme.h"
#include "lambdarr/schema.h"

namespace lambdarr {

// Every random draw for attribute `a` of record `r` comes from the Philox
// block with key = master_seed and counter = (r_lo, r_hi, a, round). Output
// therefore depends only on (scheme, data, master_seed), never on how
// records are scheduled across threads.
struct SeedSpec {
  std::uint64_t master_seed = 0;
};

// Randomizes each attribute independently: keep the true category with
// probability lambda_i, otherwise report a uniform draw over all n_i
// categories (the true one included). This samples exactly row x of
// P_0 (x) ... (x) P_{m-1}.
absl::StatusOr<Record> RandomizeRecord(const JointScheme& scheme,
                                       const Record& record, SeedSpec seed,
                                       std::uint64_t record_index);

// Record i is randomized with record_index = i. `num_threads` <= 1 runs
// inline.
absl::StatusOr<std::vector<Record>> RandomizeRecords(
    const JointScheme& scheme, std::span<const Record> records, SeedSpec seed,
    int num_threads = 1);

// lambda * x + (1 - lambda) * mean(x): the lambda matrix over the n
// individuals applied to a numeric column. Deterministic; keeps the mean.
absl::StatusOr<std::vector<double>> TransformNumeric(double lambda,
                                                     std::span<const double> x);

enum class RandomizationMode {
  // A trusted curator randomizes collected data (PRAM).
  kCentral,
  // Every respondent randomizes their own record before reporting. Simulated
  // in-process with the same per-record draws as kCentral.
  kLocalSimulated,
};

struct RandomizationPlan {
  // One lambda per schema attribute, in schema order (numeric ones too).
  std::vector<double> lambdas;
  SeedSpec seed;
  RandomizationMode mode = RandomizationMode::kCentral;
  int num_threads = 1;
  double min_lambda = kDefaultMinLambda;
};

// Joint scheme over the categorical attributes of `schema`. `lambdas` holds
// one value per schema attribute; numeric entries are skipped.
absl::StatusOr<JointScheme> SchemeForSchema(
    const Schema& schema, std::span<const double> lambdas,
    double min_lambda = kDefaultMinLambda);

// Categorical attributes go through RandomizeRecords, numeric ones through
// TransformNumeric. Numeric attributes are rejected in local mode: a
// respondent cannot form a convex combination of everyone's values.
absl::StatusOr<Dataset> RandomizeDataset(const Dataset& data,
                                         const RandomizationPlan& plan);

}  // namespace lambdarr

#endif  // LAMBDARR_RANDOMIZE_H_
