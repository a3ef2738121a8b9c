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

#include "lambdarr/dataset.h"

#include "absl/strings/str_cat.h"
#include "lambdarr/csv.h"

namespace lambdarr {

absl::Status ValidateRecords(const std::vector<Record>& records,
                             std::span<const int> shape) {
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& v = records[r].values;
    if (v.size() != shape.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "record ", r, " has ", v.size(), " values, expected ", shape.size()));
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] < 0 || v[k] >= shape[k]) {
        return absl::InvalidArgumentError(
            absl::StrCat("record ", r, " attribute ", k, ": index ", v[k],
                         " outside [0, ", shape[k], ")"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> ReadDatasetCsv(std::istream& in, const Schema& schema) {
  auto rows = ReadCsv(in);
  if (!rows.ok()) return rows.status();
  if (rows->empty()) {
    return absl::InvalidArgumentError("dataset CSV has no header row");
  }
  const int m = schema.num_attributes();
  const CsvRow& header = (*rows)[0];
  if (header.size() != static_cast<std::size_t>(m)) {
    return absl::InvalidArgumentError(
        absl::StrCat("line 1: header has ", header.size(),
                     " columns but the schema has ", m, " attributes"));
  }
  for (int i = 0; i < m; ++i) {
    if (header[i] != schema.attribute(i).name) {
      return absl::InvalidArgumentError(
          absl::StrCat("line 1, column ", i + 1, ": header '", header[i],
                       "' does not match schema attribute '",
                       schema.attribute(i).name, "'"));
    }
  }

  Dataset data{schema, {}, {}};
  data.numeric_columns.resize(schema.numeric_attributes().size());
  data.records.reserve(rows->size() - 1);
  for (std::size_t r = 1; r < rows->size(); ++r) {
    const CsvRow& row = (*rows)[r];
    if (row.size() != static_cast<std::size_t>(m)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", r + 1, ": ", row.size(), " fields, expected ", m));
    }
    Record rec;
    rec.values.reserve(schema.categorical_attributes().size());
    std::size_t numeric_slot = 0;
    for (int i = 0; i < m; ++i) {
      const Attribute& a = schema.attribute(i);
      if (a.kind == AttributeKind::kNumeric) {
        auto x = ParseDouble(row[i]);
        if (!x.ok()) {
          return absl::InvalidArgumentError(
              absl::StrCat("line ", r + 1, ", column '", a.name,
                           "': ", x.status().message()));
        }
        data.numeric_columns[numeric_slot++].push_back(*x);
        continue;
      }
      auto c = schema.CategoryIndex(i, row[i]);
      if (!c.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", r + 1, ", column '", a.name, "': ", c.status().message()));
      }
      rec.values.push_back(*c);
    }
    data.records.push_back(std::move(rec));
  }
  return data;
}

void WriteDatasetCsv(std::ostream& out, const Dataset& dataset) {
  const Schema& schema = dataset.schema;
  std::vector<std::string> fields;
  for (const Attribute& a : schema.attributes()) fields.push_back(a.name);
  WriteCsvRow(out, fields);
  for (std::size_t r = 0; r < dataset.records.size(); ++r) {
    std::size_t cat = 0;
    std::size_t num = 0;
    for (int i = 0; i < schema.num_attributes(); ++i) {
      const Attribute& a = schema.attribute(i);
      if (a.kind == AttributeKind::kNumeric) {
        fields[i] = FormatDouble(dataset.numeric_columns[num++][r]);
      } else {
        fields[i] = a.categories[dataset.records[r].values[cat++]];
      }
    }
    WriteCsvRow(out, fields);
  }
}

}  // namespace lambdarr
