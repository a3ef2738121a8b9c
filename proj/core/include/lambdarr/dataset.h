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

#ifndef LAMBDARR_DATASET_H_
#define LAMBDARR_DATASET_H_

#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdarr/schema.h"

namespace lambdarr {

// Category indices of one individual, one per categorical attribute in
// schema order.
struct Record {
  std::vector<int> values;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Dataset {
  Schema schema;
  std::vector<Record> records;
  // One column per numeric attribute (schema order), each records.size() long.
  std::vector<std::vector<double>> numeric_columns;

  std::size_t num_rows() const { return records.size(); }
};

// Checks every record index against the schema's category counts.
absl::Status ValidateRecords(const std::vector<Record>& records,
                             std::span<const int> shape);

// The header must name exactly the schema's attributes in schema order.
// Errors carry the 1-based line number and attribute name.
absl::StatusOr<Dataset> ReadDatasetCsv(std::istream& in, const Schema& schema);
void WriteDatasetCsv(std::ostream& out, const Dataset& dataset);

}  // namespace lambdarr

#endif  // LAMBDARR_DATASET_H_
