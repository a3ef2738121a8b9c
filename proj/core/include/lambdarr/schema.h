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

#ifndef LAMBDARR_SCHEMA_H_
#define LAMBDARR_SCHEMA_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"

namespace lambdarr {

enum class AttributeKind { kCategorical, kNumeric };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kCategorical;
  // Ordered, distinct labels. Empty for numeric attributes.
  std::vector<std::string> categories;

  int num_categories() const { return static_cast<int>(categories.size()); }
};

// Attribute names and category order. Category order fixes the index of
// every label and therefore the layout of every tensor built from the data.
//
// JSON form:
//   {"attributes": [
//      {"name": "sex", "categories": ["F", "M"]},
//      {"name": "income", "type": "numeric"}]}
// "type" defaults to "categorical".
class Schema {
 public:
  static absl::StatusOr<Schema> Create(std::vector<Attribute> attributes);
  static absl::StatusOr<Schema> FromJson(std::string_view json);

  std::string ToJson() const;

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& attribute(int i) const { return attributes_[i]; }
  int num_attributes() const { return static_cast<int>(attributes_.size()); }

  // Positions (in schema order) of categorical and numeric attributes.
  const std::vector<int>& categorical_attributes() const {
    return categorical_;
  }
  const std::vector<int>& numeric_attributes() const { return numeric_; }

  // Category counts of the categorical attributes, in schema order.
  std::vector<int> categorical_shape() const;
  std::vector<std::string> categorical_names() const;

  absl::StatusOr<int> CategoryIndex(int attribute,
                                    std::string_view label) const;

 private:
  explicit Schema(std::vector<Attribute> attributes);

  std::vector<Attribute> attributes_;
  std::vector<int> categorical_;
  std::vector<int> numeric_;
  std::vector<std::unordered_map<std::string, int>> label_index_;
};

}  // namespace lambdarr

#endif  // LAMBDARR_SCHEMA_H_
