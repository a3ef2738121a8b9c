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

#include "lambdarr/schema.h"

#include <set>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace lambdarr {

Schema::Schema(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  for (int i = 0; i < num_attributes(); ++i) {
    std::unordered_map<std::string, int> index;
    const Attribute& a = attributes_[i];
    if (a.kind == AttributeKind::kCategorical) {
      categorical_.push_back(i);
      for (int c = 0; c < a.num_categories(); ++c) index[a.categories[c]] = c;
    } else {
      numeric_.push_back(i);
    }
    label_index_.push_back(std::move(index));
  }
}

absl::StatusOr<Schema> Schema::Create(std::vector<Attribute> attributes) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("schema has no attributes");
  }
  std::set<std::string> names;
  for (const Attribute& a : attributes) {
    if (a.name.empty()) {
      return absl::InvalidArgumentError("attribute with an empty name");
    }
    if (!names.insert(a.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute name '", a.name, "'"));
    }
    if (a.kind == AttributeKind::kNumeric) {
      if (!a.categories.empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "numeric attribute '", a.name, "' must not list categories"));
      }
      continue;
    }
    if (a.num_categories() < 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", a.name, "' needs at least 2 categories"));
    }
    std::set<std::string> labels(a.categories.begin(), a.categories.end());
    if (labels.size() != a.categories.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "attribute '", a.name, "' has duplicate category labels"));
    }
  }
  return Schema(std::move(attributes));
}

absl::StatusOr<Schema> Schema::FromJson(std::string_view json) {
  const nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("schema is not valid JSON");
  }
  if (!j.is_object() || !j.contains("attributes") ||
      !j["attributes"].is_array()) {
    return absl::InvalidArgumentError(
        "schema JSON needs an 'attributes' array");
  }
  std::vector<Attribute> attributes;
  for (const auto& ja : j["attributes"]) {
    if (!ja.is_object() || !ja.contains("name") || !ja["name"].is_string()) {
      return absl::InvalidArgumentError(
          "every schema attribute needs a string 'name'");
    }
    Attribute a;
    a.name = ja["name"].get<std::string>();
    const std::string type = ja.value("type", std::string("categorical"));
    if (type == "numeric") {
      a.kind = AttributeKind::kNumeric;
    } else if (type != "categorical") {
      return absl::InvalidArgumentError(absl::StrCat(
          "attribute '", a.name, "' has unknown type '", type, "'"));
    }
    if (ja.contains("categories")) {
      if (!ja["categories"].is_array()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "attribute '", a.name, "': 'categories' must be an array"));
      }
      for (const auto& c : ja["categories"]) {
        // Numbers are accepted as labels and kept in their JSON spelling.
        a.categories.push_back(c.is_string() ? c.get<std::string>() : c.dump());
      }
    }
    attributes.push_back(std::move(a));
  }
  return Create(std::move(attributes));
}

std::string Schema::ToJson() const {
  nlohmann::json attrs = nlohmann::json::array();
  for (const Attribute& a : attributes_) {
    nlohmann::json ja;
    ja["name"] = a.name;
    if (a.kind == AttributeKind::kNumeric) {
      ja["type"] = "numeric";
    } else {
      ja["categories"] = a.categories;
    }
    attrs.push_back(std::move(ja));
  }
  nlohmann::json j;
  j["attributes"] = std::move(attrs);
  return j.dump();
}

std::vector<int> Schema::categorical_shape() const {
  std::vector<int> shape;
  for (int i : categorical_) shape.push_back(attributes_[i].num_categories());
  return shape;
}

std::vector<std::string> Schema::categorical_names() const {
  std::vector<std::string> names;
  for (int i : categorical_) names.push_back(attributes_[i].name);
  return names;
}

absl::StatusOr<int> Schema::CategoryIndex(int attribute,
                                          std::string_view label) const {
  const auto& index = label_index_[attribute];
  auto it = index.find(std::string(label));
  if (it == index.end()) {
    return absl::NotFoundError(absl::StrCat("'", std::string(label),
                                            "' is not a category of '",
                                            attributes_[attribute].name, "'"));
  }
  return it->second;
}

}  // namespace lambdarr
