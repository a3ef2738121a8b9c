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

// lrr: budget, randomize and estimate lambda-bistochastic randomized
// response from the command line.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "run_config.h"

namespace {

using lambdarr::cli::OutputFormat;
using lambdarr::cli::RunConfig;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::vector<double> lambdas;
  std::vector<int> sizes;
  std::string schema_path;
  std::string mode;
  std::optional<int> threads;
};

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration");
  cmd->add_option("--seed", f.seed, "master seed (overrides config)");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--lambdas", f.lambdas,
                  "per-attribute lambdas (overrides config)")
      ->delimiter(',');
  cmd->add_option("--sizes", f.sizes,
                  "per-attribute category counts when no schema is given")
      ->delimiter(',');
  cmd->add_option("--schema", f.schema_path, "schema JSON (overrides config)");
  cmd->add_option("--mode", f.mode, "central or local-simulated");
  cmd->add_option("--threads", f.threads, "worker threads for randomize");
}

// Returns nullopt after printing an error.
std::optional<RunConfig> BuildConfig(const CommonFlags& f) {
  RunConfig config;
  if (!f.config_path.empty()) {
    auto loaded = lambdarr::cli::LoadRunConfig(f.config_path);
    if (!loaded.ok()) {
      std::cerr << "error: " << loaded.status().message() << "\n";
      return std::nullopt;
    }
    config = *std::move(loaded);
  }
  if (!f.schema_path.empty()) {
    auto schema = lambdarr::cli::LoadSchema(f.schema_path);
    if (!schema.ok()) {
      std::cerr << "error: " << schema.status().message() << "\n";
      return std::nullopt;
    }
    config.schema = *std::move(schema);
  }
  if (!f.sizes.empty()) config.sizes = f.sizes;
  if (!f.lambdas.empty()) config.lambdas = f.lambdas;
  if (f.seed) config.seed = f.seed;
  if (f.threads) config.threads = *f.threads;
  if (!f.format.empty()) {
    config.format =
        f.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  }
  if (!f.mode.empty()) {
    auto mode = lambdarr::cli::ParseMode(f.mode);
    if (!mode.ok()) {
      std::cerr << "error: " << mode.status().message() << "\n";
      return std::nullopt;
    }
    config.mode = *mode;
  }
  for (double l : config.lambdas) {
    if (!(l > 0.0) || l > 1.0) {
      std::cerr << "error: lambda " << l << " is outside (0, 1]\n";
      return std::nullopt;
    }
  }
  return config;
}

OutputFormat FormatOf(const std::string& s) {
  return s == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lambdarr::cli;

  CLI::App app{"lambda-bistochastic randomized response toolkit", "lrr"};
  app.require_subcommand(1);

  CommonFlags budget_flags;
  bool table1 = false;
  CLI::App* budget =
      app.add_subcommand("budget",
                         "entropy and strength per attribute and "
                         "for the joint scheme");
  AddCommon(budget, budget_flags);
  budget->add_flag("--table1", table1, "round strengths to whole percent");

  double beta = 0.0;
  int categories = 0;
  std::string solve_format;
  CLI::App* solve = app.add_subcommand(
      "solve-lambda", "lambda giving a target strength for n categories");
  solve->add_option("--beta", beta, "target strength in [0, 1)")->required();
  solve->add_option("-n,--categories", categories, "category count")
      ->required();
  solve->add_option("--format", solve_format)
      ->check(CLI::IsMember({"csv", "json"}));

  CommonFlags randomize_flags;
  std::string randomize_input, randomize_output;
  CLI::App* randomize =
      app.add_subcommand("randomize", "randomize a CSV dataset");
  AddCommon(randomize, randomize_flags);
  randomize->add_option("--input", randomize_input, "input CSV")->required();
  randomize->add_option("--output", randomize_output, "output CSV")->required();

  CommonFlags estimate_flags;
  EstimateOptions estimate_options;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "estimate true distributions from a randomized CSV");
  AddCommon(estimate, estimate_flags);
  estimate->add_option("--input", estimate_options.input_path, "randomized CSV")
      ->required();
  estimate->add_option("--output", estimate_options.output_path,
                       "estimated joint (CSV or JSON)");
  estimate->add_flag("--project-simplex", estimate_options.project_simplex,
                     "also emit a clipped, renormalized estimate");
  estimate->add_flag("--ignore-sidecar", estimate_options.ignore_sidecar,
                     "use the configured scheme even if metadata exists");

  double lambda_a = 1.0, lambda_b = 1.0, cov = 0.0;
  std::string cov_format;
  CLI::App* predict = app.add_subcommand(
      "predict-cov", "covariance of two numeric attributes after transform");
  predict->add_option("--lambda-a", lambda_a)->required();
  predict->add_option("--lambda-b", lambda_b)->required();
  predict->add_option("--cov", cov)->required();
  predict->add_option("--format", cov_format)
      ->check(CLI::IsMember({"csv", "json"}));

  CommonFlags expand_flags;
  CLI::App* expand = app.add_subcommand("expand-inverse",
                                        "list the terms of the joint inverse");
  AddCommon(expand, expand_flags);

  CommonFlags verify_flags;
  CLI::App* verify =
      app.add_subcommand("verify",
                         "cross-check closed forms against dense "
                         "oracles");
  AddCommon(verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto with_config = [](const CommonFlags& f, auto&& run) -> int {
    std::optional<RunConfig> config = BuildConfig(f);
    if (!config) return kExitUsage;
    return run(*config);
  };

  if (*budget) {
    return with_config(budget_flags, [&](const RunConfig& c) {
      return CmdBudget(c, table1, std::cout, std::cerr);
    });
  }
  if (*solve) {
    return CmdSolveLambda(beta, categories, FormatOf(solve_format), std::cout,
                          std::cerr);
  }
  if (*randomize) {
    return with_config(randomize_flags, [&](const RunConfig& c) {
      return CmdRandomize(c, randomize_input, randomize_output, std::cout,
                          std::cerr);
    });
  }
  if (*estimate) {
    return with_config(estimate_flags, [&](const RunConfig& c) {
      return CmdEstimate(c, estimate_options, std::cout, std::cerr);
    });
  }
  if (*predict) {
    return CmdPredictCov(lambda_a, lambda_b, cov, FormatOf(cov_format),
                         std::cout, std::cerr);
  }
  if (*expand) {
    return with_config(expand_flags, [&](const RunConfig& c) {
      return CmdExpandInverse(c, std::cout, std::cerr);
    });
  }
  if (*verify) {
    const bool configured =
        !verify_flags.config_path.empty() || !verify_flags.lambdas.empty();
    if (!configured) return CmdVerify(std::nullopt, std::cout, std::cerr);
    return with_config(verify_flags, [&](const RunConfig& c) {
      return CmdVerify(c, std::cout, std::cerr);
    });
  }
  return kExitUsage;
}
