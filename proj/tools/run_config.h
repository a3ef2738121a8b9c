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

#ifndef LAMBDARR_TOOLS_RUN_CONFIG_H_
#define LAMBDARR_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdarr/joint_scheme.h"
#include "lambdarr/oracle.h"
#include "lambdarr/randomize.h"
#include "lambdarr/schema.h"
#include "lambdarr/tensor.h"

namespace lambdarr::cli {

enum class OutputFormat { kCsv, kJson };

// Everything a command needs besides its input/output paths. Loaded from a
// JSON file:
//
//   {
//     "schema": "schema.json",          // path (relative to this file) or
//                                       // an inline schema object
//     "lambdas": [0.6, 0.7, 0.4],       // one per schema attribute
//     "seed": 42,
//     "mode": "central",                // or "local-simulated"
//     "format": "csv",                  // or "json"
//     "threads": 1,
//     "caps": {"tensor_cells": 10000000, "dense_dimension": 512,
//              "min_lambda": 1e-6}
//   }
//
// "sizes": [5, 5, 5] may replace "schema" for commands that only need
// category counts (budget, expand-inverse, verify).
struct RunConfig {
  std::optional<Schema> schema;
  std::vector<int> sizes;  // used only when schema is absent
  std::vector<double> lambdas;
  std::optional<std::uint64_t> seed;
  RandomizationMode mode = RandomizationMode::kCentral;
  OutputFormat format = OutputFormat::kCsv;
  int threads = 1;
  std::size_t tensor_cell_cap = kDefaultTensorCellCap;
  std::size_t dense_dimension_cap = oracle::kDefaultDimensionCap;
  double min_lambda = kDefaultMinLambda;

  // Category counts of the categorical attributes (schema) or `sizes`.
  std::vector<int> CategoricalSizes() const;
  std::vector<std::string> CategoricalNames() const;
  // Lambdas of the categorical attributes, in order.
  absl::StatusOr<std::vector<double>> CategoricalLambdas() const;
  absl::StatusOr<JointScheme> Scheme() const;
};

absl::StatusOr<RunConfig> ParseRunConfig(std::string_view json,
                                         const std::string& base_dir);
absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::StatusOr<Schema> LoadSchema(const std::string& path);

std::string ModeName(RandomizationMode mode);
absl::StatusOr<RandomizationMode> ParseMode(std::string_view name);

// FNV-1a 64 over the schema (names, kinds, category labels) and lambdas
// printed with 17 significant digits, as 16 hex digits. Ties a randomized
// file to the scheme that produced it.
std::string SchemeHash(const Schema& schema, std::span<const double> lambdas);

}  // namespace lambdarr::cli

#endif  // LAMBDARR_TOOLS_RUN_CONFIG_H_
