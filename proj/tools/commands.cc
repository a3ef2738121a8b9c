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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "lambdarr/csv.h"
#include "lambdarr/dataset.h"
#include "lambdarr/estimate.h"
#include "lambdarr/verify.h"

namespace lambdarr::cli {

namespace {

using nlohmann::json;

int Report(std::ostream& err, const absl::Status& status, int code) {
  err << "error: " << status.message() << "\n";
  return code;
}

std::string Percent(double fraction, bool whole) {
  return whole ? absl::StrFormat("%.0f%%", 100.0 * fraction)
               : absl::StrFormat("%.1f%%", 100.0 * fraction);
}

std::string Roman(int n) {
  static constexpr std::pair<int, const char*> kDigits[] = {
      {10, "x"}, {9, "ix"}, {5, "v"}, {4, "iv"}, {1, "i"}};
  std::string out;
  for (const auto& [value, text] : kDigits) {
    while (n >= value) {
      out += text;
      n -= value;
    }
  }
  return out;
}

// "1/0.6", "1/(0.6·0.7)", or "" when every chosen lambda is 1.
std::string CoefficientText(const JointScheme& scheme,
                            const InverseTerm& term) {
  std::vector<std::string> parts;
  for (int i = 0; i < scheme.num_attributes(); ++i) {
    if (term.epsilon[i] && scheme.factor(i).lambda() != 1.0) {
      parts.push_back(absl::StrFormat("%g", scheme.factor(i).lambda()));
    }
  }
  if (parts.empty()) return "";
  if (parts.size() == 1) return absl::StrCat("1/", parts[0]);
  return absl::StrCat("1/(", absl::StrJoin(parts, "·"), ")");
}

std::string ProductText(const InverseTerm& term) {
  std::vector<std::string> parts;
  for (auto e : term.epsilon) parts.push_back(e ? "(I - P*)" : "P*");
  return absl::StrJoin(parts, " ⊗ ");
}

bool WriteTextFile(const std::string& path,
                   const std::function<void(std::ostream&)>& body,
                   std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  body(out);
  out.flush();
  if (!out) {
    err << "error: write to " << path << " failed\n";
    return false;
  }
  return true;
}

// Replaces a trailing ".csv"/".json" with `suffix`, else appends it.
std::string SiblingPath(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  if (p.extension() == ".csv" || p.extension() == ".json") {
    p.replace_extension();
  }
  return p.string() + suffix;
}

json ToJsonArray(std::span<const double> v) {
  return json(std::vector<double>(v.begin(), v.end()));
}

struct SchemeSource {
  Schema schema;
  std::vector<double> lambdas;  // one per schema attribute
  std::string origin;
};

absl::StatusOr<std::optional<SchemeSource>> ReadSidecar(
    const std::string& path) {
  if (!std::filesystem::exists(path)) return std::optional<SchemeSource>();
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  const json j = json::parse(*text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("schema") ||
      !j.contains("lambdas")) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": metadata needs 'schema' and 'lambdas'"));
  }
  auto schema = Schema::FromJson(j["schema"].dump());
  if (!schema.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", schema.status().message()));
  }
  SchemeSource source{*std::move(schema), {}, path};
  try {
    source.lambdas = j["lambdas"].get<std::vector<double>>();
  } catch (const json::exception&) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": 'lambdas' must be an array of numbers"));
  }
  if (j.contains("scheme_hash") && j["scheme_hash"].is_string() &&
      j["scheme_hash"].get<std::string>() !=
          SchemeHash(source.schema, source.lambdas)) {
    return absl::DataLossError(absl::StrCat(
        path, ": scheme hash does not match its schema and lambdas"));
  }
  return std::optional<SchemeSource>(std::move(source));
}

}  // namespace

std::string SidecarPath(const std::string& data_path) {
  return data_path + ".meta.json";
}

int CmdBudget(const RunConfig& config, bool table1, std::ostream& out,
              std::ostream& err) {
  auto scheme = config.Scheme();
  if (!scheme.ok()) return Report(err, scheme.status(), kExitUsage);
  const std::vector<std::string> names = config.CategoricalNames();

  if (config.format == OutputFormat::kJson) {
    json attrs = json::array();
    for (int i = 0; i < scheme->num_attributes(); ++i) {
      const LambdaMatrix& f = scheme->factor(i);
      attrs.push_back({{"name", names[i]},
                       {"categories", f.size()},
                       {"lambda", f.lambda()},
                       {"entropy_bits", f.EntropyRate()},
                       {"max_bits", std::log2(static_cast<double>(f.size()))},
                       {"strength", f.Strength()}});
    }
    json doc = {{"attributes", attrs},
                {"joint",
                 {{"entropy_bits", scheme->EntropyRate()},
                  {"max_bits", scheme->MaxEntropyRate()},
                  {"strength", scheme->Strength()},
                  {"diagonal_truthfulness", scheme->DiagonalTruthfulness()}}}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::size_t width = 9;
  for (const auto& n : names) width = std::max(width, n.size());
  out << absl::StrFormat("%-*s %10s %8s %12s %9s %9s\n", width, "attribute",
                         "categories", "lambda", "entropy_bits", "max_bits",
                         "strength");
  for (int i = 0; i < scheme->num_attributes(); ++i) {
    const LambdaMatrix& f = scheme->factor(i);
    out << absl::StrFormat("%-*s %10d %8g %12.4f %9.4f %9s\n", width, names[i],
                           f.size(), f.lambda(), f.EntropyRate(),
                           std::log2(static_cast<double>(f.size())),
                           Percent(f.Strength(), table1));
  }
  std::uint64_t cells = 1;
  for (int n : scheme->shape()) cells *= static_cast<std::uint64_t>(n);
  out << absl::StrFormat("%-*s %10d %8s %12.4f %9.4f %9s\n", width, "joint",
                         cells, "", scheme->EntropyRate(),
                         scheme->MaxEntropyRate(),
                         Percent(scheme->Strength(), table1));
  out << absl::StrFormat("record kept intact with probability %.6g\n",
                         scheme->DiagonalTruthfulness());
  if (config.schema && !config.schema->numeric_attributes().empty()) {
    out << "numeric attributes are transformed deterministically and are not "
           "part of the joint budget\n";
  }
  return kExitOk;
}

int CmdSolveLambda(double beta, int categories, OutputFormat format,
                   std::ostream& out, std::ostream& err) {
  auto lambda = SolveLambda(beta, categories);
  if (!lambda.ok()) return Report(err, lambda.status(), kExitUsage);
  auto m = LambdaMatrix::Create(*lambda, categories, *lambda);
  if (!m.ok()) return Report(err, m.status(), kExitUsage);
  if (format == OutputFormat::kJson) {
    out << json({{"beta", beta},
                 {"categories", categories},
                 {"lambda", *lambda},
                 {"strength", m->Strength()},
                 {"entropy_bits", m->EntropyRate()}})
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << absl::StrFormat(
      "lambda = %s\nstrength = %.12f (target %.12f)\nentropy = %.6f bits of "
      "%.6f\n",
      FormatDouble(*lambda), m->Strength() + 0.0, beta, m->EntropyRate() + 0.0,
      std::log2(static_cast<double>(categories)));
  return kExitOk;
}

int CmdRandomize(const RunConfig& config, const std::string& input_path,
                 const std::string& output_path, std::ostream& out,
                 std::ostream& err) {
  if (!config.schema) {
    return Report(err, absl::InvalidArgumentError("randomize needs a schema"),
                  kExitUsage);
  }
  if (config.lambdas.size() !=
      static_cast<std::size_t>(config.schema->num_attributes())) {
    return Report(
        err,
        absl::InvalidArgumentError(absl::StrCat(
            "randomize needs one lambda per schema attribute (",
            config.schema->num_attributes(), "), got ", config.lambdas.size())),
        kExitUsage);
  }
  if (!config.seed) {
    return Report(err,
                  absl::InvalidArgumentError(
                      "randomize needs a seed (--seed or \"seed\" in config)"),
                  kExitUsage);
  }
  if (input_path.empty() || output_path.empty()) {
    return Report(
        err, absl::InvalidArgumentError("randomize needs --input and --output"),
        kExitUsage);
  }

  std::ifstream in(input_path, std::ios::binary);
  if (!in) {
    return Report(err, absl::NotFoundError("cannot open " + input_path),
                  kExitData);
  }
  auto data = ReadDatasetCsv(in, *config.schema);
  if (!data.ok()) {
    return Report(err,
                  absl::InvalidArgumentError(
                      absl::StrCat(input_path, ": ", data.status().message())),
                  kExitData);
  }

  RandomizationPlan plan;
  plan.lambdas = config.lambdas;
  plan.seed.master_seed = *config.seed;
  plan.mode = config.mode;
  plan.num_threads = config.threads;
  plan.min_lambda = config.min_lambda;
  auto randomized = RandomizeDataset(*data, plan);
  if (!randomized.ok()) {
    const int code =
        randomized.status().code() == absl::StatusCode::kFailedPrecondition
            ? kExitData
            : kExitUsage;
    return Report(err, randomized.status(), code);
  }

  if (!WriteTextFile(
          output_path,
          [&](std::ostream& o) { WriteDatasetCsv(o, *randomized); }, err)) {
    return kExitData;
  }
  const json meta = {
      {"schema", json::parse(config.schema->ToJson())},
      {"lambdas", config.lambdas},
      {"seed", *config.seed},
      {"mode", ModeName(config.mode)},
      {"records", randomized->num_rows()},
      {"scheme_hash", SchemeHash(*config.schema, config.lambdas)},
      {"generated_locally", config.mode == RandomizationMode::kLocalSimulated}};
  if (!WriteTextFile(
          SidecarPath(output_path),
          [&](std::ostream& o) { o << meta.dump(2) << "\n"; }, err)) {
    return kExitData;
  }
  out << absl::StrFormat("randomized %d records (%s mode, seed %d) -> %s\n",
                         randomized->num_rows(), ModeName(config.mode),
                         *config.seed, output_path);
  return kExitOk;
}

int CmdEstimate(const RunConfig& config, const EstimateOptions& options,
                std::ostream& out, std::ostream& err) {
  if (options.input_path.empty()) {
    return Report(err, absl::InvalidArgumentError("estimate needs --input"),
                  kExitUsage);
  }
  std::optional<SchemeSource> source;
  if (!options.ignore_sidecar) {
    auto sidecar = ReadSidecar(SidecarPath(options.input_path));
    if (!sidecar.ok()) return Report(err, sidecar.status(), kExitData);
    source = *std::move(sidecar);
  }
  if (source && config.schema && !config.lambdas.empty() &&
      SchemeHash(*config.schema, config.lambdas) !=
          SchemeHash(source->schema, source->lambdas)) {
    return Report(
        err,
        absl::InvalidArgumentError(absl::StrCat(
            "configured schema/lambdas disagree with ", source->origin)),
        kExitData);
  }
  if (!source) {
    if (!config.schema) {
      return Report(err,
                    absl::InvalidArgumentError(
                        "no metadata sidecar next to the input and no schema "
                        "configured"),
                    kExitUsage);
    }
    if (config.lambdas.empty()) {
      return Report(err,
                    absl::InvalidArgumentError(
                        "no metadata sidecar next to the input and no "
                        "lambdas configured"),
                    kExitUsage);
    }
    source = SchemeSource{*config.schema, config.lambdas, "config"};
  }
  const Schema& schema = source->schema;
  if (schema.categorical_attributes().empty()) {
    return Report(err,
                  absl::InvalidArgumentError(
                      "schema has no categorical attributes to estimate"),
                  kExitUsage);
  }
  auto scheme = SchemeForSchema(schema, source->lambdas, config.min_lambda);
  if (!scheme.ok()) return Report(err, scheme.status(), kExitUsage);

  std::ifstream in(options.input_path, std::ios::binary);
  if (!in) {
    return Report(err, absl::NotFoundError("cannot open " + options.input_path),
                  kExitData);
  }
  auto data = ReadDatasetCsv(in, schema);
  if (!data.ok()) {
    return Report(err,
                  absl::InvalidArgumentError(absl::StrCat(
                      options.input_path, ": ", data.status().message())),
                  kExitData);
  }
  auto theta = EmpiricalJoint(data->records, schema.categorical_shape(),
                              config.tensor_cell_cap);
  if (!theta.ok()) {
    const int code =
        theta.status().code() == absl::StatusCode::kResourceExhausted
            ? kExitUsage
            : kExitData;
    return Report(err, theta.status(), code);
  }
  auto pi = EstimateTrueJoint(*scheme, *theta);
  if (!pi.ok()) return Report(err, pi.status(), kExitData);

  std::optional<SimplexProjection> projection;
  if (options.project_simplex) {
    auto p = ProjectToSimplex(*pi);
    if (!p.ok()) return Report(err, p.status(), kExitData);
    projection = *std::move(p);
  }

  const std::size_t negative = static_cast<std::size_t>(std::count_if(
      pi->cells().begin(), pi->cells().end(), [](double x) { return x < 0; }));
  if (negative > 0) {
    err << absl::StrFormat(
        "warning: %d of %d estimated joint cells are negative (unbiased "
        "estimate kept as-is%s)\n",
        negative, pi->num_cells(),
        options.project_simplex ? "; projected copy also written"
                                : "; pass --project-simplex for a clipped "
                                  "copy");
  }

  const std::vector<std::string> names = schema.categorical_names();
  struct MarginalRow {
    std::string name;
    std::vector<std::string> categories;
    std::vector<double> observed;
    std::vector<double> estimated;
    std::vector<double> projected;
  };
  std::vector<MarginalRow> marginals;
  for (int k = 0; k < scheme->num_attributes(); ++k) {
    MarginalRow row;
    row.name = names[k];
    row.categories =
        schema.attribute(schema.categorical_attributes()[k]).categories;
    row.observed = theta->MarginalVector(k);
    row.estimated = *EstimateMarginal(scheme->factor(k), row.observed);
    if (projection) row.projected = projection->tensor.MarginalVector(k);
    marginals.push_back(std::move(row));
  }

  // Human-readable report.
  out << absl::StrFormat("records: %d\n", data->num_rows());
  out << absl::StrFormat("scheme: %s (source: %s)\n",
                         SchemeHash(schema, source->lambdas), source->origin);
  for (const MarginalRow& m : marginals) {
    out << absl::StrFormat("\nattribute '%s'\n", m.name);
    std::size_t width = 8;
    for (const auto& c : m.categories) width = std::max(width, c.size());
    out << absl::StrFormat("  %-*s %12s %12s%s\n", width, "category",
                           "observed", "estimated",
                           projection ? "    projected" : "");
    for (std::size_t c = 0; c < m.categories.size(); ++c) {
      out << absl::StrFormat("  %-*s %12.6f %12.6f", width, m.categories[c],
                             m.observed[c], m.estimated[c]);
      if (projection) out << absl::StrFormat(" %12.6f", m.projected[c]);
      out << "\n";
    }
  }
  out << absl::StrFormat(
      "\njoint: %d cells, %d negative estimates%s\n", pi->num_cells(), negative,
      projection && projection->projected ? ", simplex projection applied"
                                          : "");

  if (options.output_path.empty()) return kExitOk;

  if (config.format == OutputFormat::kJson) {
    json jm = json::array();
    for (const MarginalRow& m : marginals) {
      json e = {{"name", m.name},
                {"categories", m.categories},
                {"observed", m.observed},
                {"estimated", m.estimated}};
      if (projection) e["projected"] = m.projected;
      jm.push_back(std::move(e));
    }
    json doc = {{"records", data->num_rows()},
                {"scheme_hash", SchemeHash(schema, source->lambdas)},
                {"lambdas", scheme->lambdas()},
                {"shape", scheme->shape()},
                {"names", names},
                {"theta_hat", ToJsonArray(theta->cells())},
                {"pi_hat", ToJsonArray(pi->cells())},
                {"negative_cells", negative},
                {"marginals", jm}};
    if (projection) {
      doc["pi_hat_projected"] = ToJsonArray(projection->tensor.cells());
      doc["projection_applied"] = projection->projected;
    }
    if (!WriteTextFile(
            options.output_path,
            [&](std::ostream& o) { o << doc.dump(2) << "\n"; }, err)) {
      return kExitData;
    }
    return kExitOk;
  }

  bool ok = WriteTextFile(
      options.output_path,
      [&](std::ostream& o) { WriteTensorCsv(o, *pi, names); }, err);
  ok = ok &&
       WriteTextFile(
           SiblingPath(options.output_path, ".theta.csv"),
           [&](std::ostream& o) { WriteTensorCsv(o, *theta, names); }, err);
  if (projection) {
    ok = ok && WriteTextFile(
                   SiblingPath(options.output_path, ".projected.csv"),
                   [&](std::ostream& o) {
                     WriteTensorCsv(o, projection->tensor, names);
                   },
                   err);
  }
  ok = ok && WriteTextFile(
                 SiblingPath(options.output_path, ".marginals.csv"),
                 [&](std::ostream& o) {
                   std::vector<std::string> header = {"attribute", "category",
                                                      "observed", "estimated"};
                   if (projection) header.push_back("projected");
                   WriteCsvRow(o, header);
                   for (const MarginalRow& m : marginals) {
                     for (std::size_t c = 0; c < m.categories.size(); ++c) {
                       std::vector<std::string> row = {
                           m.name, m.categories[c], FormatDouble(m.observed[c]),
                           FormatDouble(m.estimated[c])};
                       if (projection)
                         row.push_back(FormatDouble(m.projected[c]));
                       WriteCsvRow(o, row);
                     }
                   }
                 },
                 err);
  return ok ? kExitOk : kExitData;
}

int CmdPredictCov(double lambda_a, double lambda_b, double cov,
                  OutputFormat format, std::ostream& out, std::ostream& err) {
  auto predicted = PredictCovariance(lambda_a, lambda_b, cov);
  if (!predicted.ok()) return Report(err, predicted.status(), kExitUsage);
  if (format == OutputFormat::kJson) {
    out << json({{"lambda_a", lambda_a},
                 {"lambda_b", lambda_b},
                 {"cov", cov},
                 {"predicted_cov", *predicted},
                 {"retained_fraction", lambda_a * lambda_b}})
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << absl::StrFormat("predicted covariance = %s (%.6g of the original)\n",
                         FormatDouble(*predicted), lambda_a * lambda_b);
  return kExitOk;
}

int CmdExpandInverse(const RunConfig& config, std::ostream& out,
                     std::ostream& err) {
  auto scheme = config.Scheme();
  if (!scheme.ok()) return Report(err, scheme.status(), kExitUsage);
  auto centered = scheme->InverseTerms(InverseBasis::kCenteredUniform);
  if (!centered.ok()) return Report(err, centered.status(), kExitUsage);
  auto ones = scheme->InverseTerms(InverseBasis::kIdentityAllOnes);
  const int m = scheme->num_attributes();

  // Group by weight; within a group, epsilon = (1,0,...) comes first.
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t t = centered->size(); t-- > 0;) {
    groups[(*centered)[t].Weight()].push_back(t);
  }

  if (config.format == OutputFormat::kJson) {
    json terms = json::array();
    for (const auto& [weight, members] : groups) {
      for (std::size_t t : members) {
        const InverseTerm& c = (*centered)[t];
        terms.push_back(
            {{"epsilon", c.epsilon},
             {"weight", weight},
             {"coefficient", c.coefficient},
             {"coefficient_text", CoefficientText(*scheme, c)},
             {"identity_all_ones_coefficient", (*ones)[t].coefficient}});
      }
    }
    out << json({{"lambdas", scheme->lambdas()},
                 {"sizes", scheme->shape()},
                 {"terms", terms}})
               .dump(2)
        << "\n";
    return kExitOk;
  }

  std::vector<std::string> sizes;
  for (int n : scheme->shape()) sizes.push_back(absl::StrCat(n, "x", n));
  out << absl::StrFormat(
      "inverse of a %d-factor Kronecker product (%s): %d terms in (I - P*) "
      "and P*\n",
      m, absl::StrJoin(sizes, ", "), centered->size());
  std::vector<std::string> summands;
  int group_no = 1;
  for (const auto& [weight, members] : groups) {
    const std::string label =
        weight == 0 ? "no (I - P*) factor"
                    : absl::StrFormat("exactly %d (I - P*) factor%s", weight,
                                      weight == 1 ? "" : "s");
    out << absl::StrFormat("(%s) %s: %d term%s\n", Roman(group_no++), label,
                           members.size(), members.size() == 1 ? "" : "s");
    for (std::size_t t : members) {
      const InverseTerm& c = (*centered)[t];
      const std::string coeff = CoefficientText(*scheme, c);
      const std::string product = ProductText(c);
      out << absl::StrFormat("    %s%s%s   [= %.10g]\n", coeff,
                             coeff.empty() ? "" : " ", product, c.coefficient);
      summands.push_back(coeff.empty() ? product
                                       : absl::StrCat(coeff, " ", product));
    }
  }
  // Highest order first, so m = 1 reads (I - P*) + P*.
  std::reverse(summands.begin(), summands.end());
  out << "sum: " << absl::StrJoin(summands, " + ") << "\n";
  out << "same inverse over I and the all-ones matrix J:\n";
  for (std::size_t t = 0; t < ones->size(); ++t) {
    std::vector<std::string> parts;
    for (auto e : (*ones)[t].epsilon) parts.push_back(e ? "J" : "I");
    out << absl::StrFormat("    %+.10g %s\n", (*ones)[t].coefficient + 0.0,
                           absl::StrJoin(parts, " ⊗ "));
  }
  return kExitOk;
}

int CmdVerify(const std::optional<RunConfig>& config, std::ostream& out,
              std::ostream& err) {
  std::vector<JointScheme> schemes = DefaultVerificationSchemes();
  VerifyOptions options;
  if (config) {
    options.dimension_cap = config->dense_dimension_cap;
    if (!config->lambdas.empty()) {
      auto scheme = config->Scheme();
      if (!scheme.ok()) return Report(err, scheme.status(), kExitUsage);
      schemes.push_back(*std::move(scheme));
    }
  }
  const VerifyReport report = RunVerification(schemes, options);
  for (const CheckResult& c : report.checks) {
    out << absl::StrFormat(
        "%s  %s: closed-form %.17g vs oracle %.17g, tol "
        "%.0e (%s)\n",
        c.passed ? "PASS" : "FAIL", c.name, c.closed_form, c.oracle,
        c.tolerance, c.detail);
  }
  out << absl::StrFormat("%d checks, %d failed\n", report.checks.size(),
                         report.NumFailed());
  return report.AllPassed() ? kExitOk : kExitVerification;
}

}  // namespace lambdarr::cli
