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

#include "run_config.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "lambdarr/csv.h"

namespace lambdarr::cli {

std::vector<int> RunConfig::CategoricalSizes() const {
  return schema ? schema->categorical_shape() : sizes;
}

std::vector<std::string> RunConfig::CategoricalNames() const {
  if (schema) return schema->categorical_names();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    names.push_back(absl::StrCat("attribute", i + 1));
  }
  return names;
}

absl::StatusOr<std::vector<double>> RunConfig::CategoricalLambdas() const {
  if (lambdas.empty()) {
    return absl::InvalidArgumentError(
        "no lambdas configured; set \"lambdas\" in the config or pass "
        "--lambdas");
  }
  if (!schema) {
    if (lambdas.size() != sizes.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          lambdas.size(), " lambdas for ", sizes.size(), " attribute sizes"));
    }
    return lambdas;
  }
  if (lambdas.size() != static_cast<std::size_t>(schema->num_attributes())) {
    return absl::InvalidArgumentError(
        absl::StrCat(lambdas.size(), " lambdas for a schema with ",
                     schema->num_attributes(), " attributes"));
  }
  std::vector<double> out;
  for (int i : schema->categorical_attributes()) out.push_back(lambdas[i]);
  return out;
}

absl::StatusOr<JointScheme> RunConfig::Scheme() const {
  auto l = CategoricalLambdas();
  if (!l.ok()) return l.status();
  const std::vector<int> n = CategoricalSizes();
  if (n.empty()) {
    return absl::InvalidArgumentError(
        "no categorical attributes configured; set \"schema\" or \"sizes\"");
  }
  return JointScheme::FromLambdas(*l, n, min_lambda);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::StatusOr<Schema> LoadSchema(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  auto schema = Schema::FromJson(*text);
  if (!schema.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", schema.status().message()));
  }
  return schema;
}

std::string ModeName(RandomizationMode mode) {
  return mode == RandomizationMode::kCentral ? "central" : "local-simulated";
}

absl::StatusOr<RandomizationMode> ParseMode(std::string_view name) {
  if (name == "central") return RandomizationMode::kCentral;
  if (name == "local-simulated" || name == "local") {
    return RandomizationMode::kLocalSimulated;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mode '", std::string(name),
                   "'; expected central or local-simulated"));
}

absl::StatusOr<RunConfig> ParseRunConfig(std::string_view json,
                                         const std::string& base_dir) {
  const nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("config is not a JSON object");
  }
  RunConfig config;
  try {
    if (j.contains("schema")) {
      const auto& s = j["schema"];
      if (s.is_string()) {
        std::filesystem::path p = s.get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        auto schema = LoadSchema(p.string());
        if (!schema.ok()) return schema.status();
        config.schema = *std::move(schema);
      } else {
        auto schema = Schema::FromJson(s.dump());
        if (!schema.ok()) return schema.status();
        config.schema = *std::move(schema);
      }
    }
    if (j.contains("sizes")) {
      config.sizes = j["sizes"].get<std::vector<int>>();
    }
    if (j.contains("lambdas")) {
      config.lambdas = j["lambdas"].get<std::vector<double>>();
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_integer() ||
          (j["seed"].is_number_integer() && !j["seed"].is_number_unsigned() &&
           j["seed"].get<std::int64_t>() < 0)) {
        return absl::InvalidArgumentError(
            "config \"seed\" must be a non-negative integer");
      }
      config.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("mode")) {
      auto mode = ParseMode(j["mode"].get<std::string>());
      if (!mode.ok()) return mode.status();
      config.mode = *mode;
    }
    if (j.contains("format")) {
      const std::string f = j["format"].get<std::string>();
      if (f == "csv") {
        config.format = OutputFormat::kCsv;
      } else if (f == "json") {
        config.format = OutputFormat::kJson;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown format '", f, "'"));
      }
    }
    if (j.contains("threads")) config.threads = j["threads"].get<int>();
    if (j.contains("caps")) {
      const auto& caps = j["caps"];
      if (caps.contains("tensor_cells")) {
        config.tensor_cell_cap = caps["tensor_cells"].get<std::size_t>();
      }
      if (caps.contains("dense_dimension")) {
        config.dense_dimension_cap = caps["dense_dimension"].get<std::size_t>();
      }
      if (caps.contains("min_lambda")) {
        config.min_lambda = caps["min_lambda"].get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config has a field of the wrong type: ", e.what()));
  }
  for (double l : config.lambdas) {
    if (!(l > 0.0) || l > 1.0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("config lambda %.17g is outside (0, 1]", l));
    }
  }
  if (config.schema && !config.lambdas.empty() &&
      config.lambdas.size() !=
          static_cast<std::size_t>(config.schema->num_attributes())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "config has ", config.lambdas.size(), " lambdas but the schema has ",
        config.schema->num_attributes(), " attributes"));
  }
  return config;
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  auto config =
      ParseRunConfig(*text, std::filesystem::path(path).parent_path().string());
  if (!config.ok()) {
    return absl::Status(config.status().code(),
                        absl::StrCat(path, ": ", config.status().message()));
  }
  return config;
}

std::string SchemeHash(const Schema& schema, std::span<const double> lambdas) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // field separator
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < schema.num_attributes(); ++i) {
    const Attribute& a = schema.attribute(i);
    feed(a.name);
    feed(a.kind == AttributeKind::kNumeric ? "numeric" : "categorical");
    for (const auto& c : a.categories) feed(c);
    feed(i < static_cast<int>(lambdas.size()) ? FormatDouble(lambdas[i]) : "");
  }
  return absl::StrFormat("%016x", h);
}

}  // namespace lambdarr::cli
