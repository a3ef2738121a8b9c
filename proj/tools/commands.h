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

// Subcommands of the lrr tool. Each returns a process exit code and writes
// its report to `out` and diagnostics to `err`.

#ifndef LAMBDARR_TOOLS_COMMANDS_H_
#define LAMBDARR_TOOLS_COMMANDS_H_

#include <optional>
#include <ostream>
#include <string>

#include "run_config.h"

namespace lambdarr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitVerification = 3,
};

// Per-attribute and joint entropy (bits) and strength. `table1` rounds
// strengths to whole percent instead of one decimal.
int CmdBudget(const RunConfig& config, bool table1, std::ostream& out,
              std::ostream& err);

int CmdSolveLambda(double beta, int categories, OutputFormat format,
                   std::ostream& out, std::ostream& err);

// Writes the randomized CSV to `output_path` and a sidecar
// `<output_path>.meta.json` holding schema, lambdas, seed, mode and scheme
// hash.
int CmdRandomize(const RunConfig& config, const std::string& input_path,
                 const std::string& output_path, std::ostream& out,
                 std::ostream& err);

struct EstimateOptions {
  std::string input_path;
  std::string output_path;  // empty: report only
  bool project_simplex = false;
  // Skip `<input>.meta.json` even when present.
  bool ignore_sidecar = false;
};

// Observed and estimated joint and marginal distributions of a randomized
// CSV. The scheme comes from the sidecar next to the input when present,
// otherwise from `config`.
int CmdEstimate(const RunConfig& config, const EstimateOptions& options,
                std::ostream& out, std::ostream& err);

int CmdPredictCov(double lambda_a, double lambda_b, double cov,
                  OutputFormat format, std::ostream& out, std::ostream& err);

// Lists the 2^m terms of the inverse grouped by the number of (I - P*)
// factors.
int CmdExpandInverse(const RunConfig& config, std::ostream& out,
                     std::ostream& err);

// Runs the oracle cross-checks on the built-in schemes plus the configured
// scheme, if any. Exit code 3 when any check fails.
int CmdVerify(const std::optional<RunConfig>& config, std::ostream& out,
              std::ostream& err);

std::string SidecarPath(const std::string& data_path);

}  // namespace lambdarr::cli

#endif  // LAMBDARR_TOOLS_COMMANDS_H_
