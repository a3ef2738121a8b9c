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

#include "lambdarr/tensor.h"

#include <algorithm>
#include <charconv>
#include <limits>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "lambdarr/csv.h"

namespace lambdarr {

absl::StatusOr<std::size_t> CellCount(std::span<const int> shape,
                                      std::size_t max_cells) {
  if (shape.empty()) {
    return absl::InvalidArgumentError("tensor needs at least one mode");
  }
  std::size_t count = 1;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (shape[k] < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("mode ", k, " has extent ", shape[k]));
    }
    const auto extent = static_cast<std::size_t>(shape[k]);
    if (count > max_cells / extent) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "joint grid exceeds the cap of ", max_cells,
          " cells; the number of cells grows as the product of category "
          "counts"));
    }
    count *= extent;
  }
  return count;
}

ContingencyTensor::ContingencyTensor(std::vector<int> shape,
                                     std::vector<double> cells)
    : shape_(std::move(shape)),
      strides_(shape_.size()),
      cells_(std::move(cells)) {
  std::size_t stride = 1;
  for (std::size_t k = shape_.size(); k-- > 0;) {
    strides_[k] = stride;
    stride *= static_cast<std::size_t>(shape_[k]);
  }
}

absl::StatusOr<ContingencyTensor> ContingencyTensor::Zeros(
    std::vector<int> shape, std::size_t max_cells) {
  auto count = CellCount(shape, max_cells);
  if (!count.ok()) return count.status();
  return ContingencyTensor(std::move(shape), std::vector<double>(*count, 0.0));
}

absl::StatusOr<ContingencyTensor> ContingencyTensor::FromCells(
    std::vector<int> shape, std::vector<double> cells, std::size_t max_cells) {
  auto count = CellCount(shape, max_cells);
  if (!count.ok()) return count.status();
  if (cells.size() != *count) {
    return absl::InvalidArgumentError(
        absl::StrCat("shape needs ", *count, " cells, got ", cells.size()));
  }
  return ContingencyTensor(std::move(shape), std::move(cells));
}

std::size_t ContingencyTensor::stride(int mode) const {
  return strides_[static_cast<std::size_t>(mode)];
}

std::size_t ContingencyTensor::FlatIndex(std::span<const int> index) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    flat += static_cast<std::size_t>(index[k]) * strides_[k];
  }
  return flat;
}

void ContingencyTensor::Unflatten(std::size_t flat,
                                  std::span<int> index) const {
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    index[k] = static_cast<int>(flat / strides_[k]);
    flat %= strides_[k];
  }
}

double ContingencyTensor::Sum() const {
  double sum = 0.0;
  for (double x : cells_) sum += x;
  return sum;
}

absl::StatusOr<ContingencyTensor> ContingencyTensor::Marginal(
    std::span<const int> keep) const {
  if (keep.empty()) {
    return absl::InvalidArgumentError("marginal must keep at least one mode");
  }
  std::vector<int> modes(keep.begin(), keep.end());
  std::sort(modes.begin(), modes.end());
  if (std::adjacent_find(modes.begin(), modes.end()) != modes.end() ||
      modes.front() < 0 || modes.back() >= rank()) {
    return absl::InvalidArgumentError("invalid mode list for marginal");
  }
  std::vector<int> out_shape;
  for (int k : modes) out_shape.push_back(shape_[k]);
  auto out = Zeros(out_shape, std::numeric_limits<std::size_t>::max());
  if (!out.ok()) return out.status();

  std::vector<int> index(shape_.size(), 0);
  std::vector<int> out_index(modes.size());
  for (std::size_t flat = 0; flat < cells_.size(); ++flat) {
    for (std::size_t j = 0; j < modes.size(); ++j)
      out_index[j] = index[modes[j]];
    (*out)[out->FlatIndex(out_index)] += cells_[flat];
    // Odometer increment, last mode fastest.
    for (std::size_t k = shape_.size(); k-- > 0;) {
      if (++index[k] < shape_[k]) break;
      index[k] = 0;
    }
  }
  return out;
}

std::vector<double> ContingencyTensor::MarginalVector(int mode) const {
  const std::size_t n = static_cast<std::size_t>(shape_[mode]);
  const std::size_t stride = strides_[mode];
  std::vector<double> out(n, 0.0);
  for (std::size_t flat = 0; flat < cells_.size(); ++flat) {
    out[(flat / stride) % n] += cells_[flat];
  }
  return out;
}

namespace {

std::vector<std::string> ModeNames(std::span<const std::string> names,
                                   int rank) {
  std::vector<std::string> out;
  for (int k = 0; k < rank; ++k) {
    if (static_cast<std::size_t>(k) < names.size() && !names[k].empty()) {
      out.push_back(names[k]);
    } else {
      out.push_back(absl::StrCat("a", k));
    }
  }
  return out;
}

}  // namespace

void WriteTensorCsv(std::ostream& out, const ContingencyTensor& tensor,
                    std::span<const std::string> mode_names) {
  std::vector<std::string> fields = ModeNames(mode_names, tensor.rank());
  fields.push_back("value");
  WriteCsvRow(out, fields);
  std::vector<int> index(tensor.rank());
  for (std::size_t flat = 0; flat < tensor.num_cells(); ++flat) {
    tensor.Unflatten(flat, index);
    for (int k = 0; k < tensor.rank(); ++k) fields[k] = absl::StrCat(index[k]);
    fields.back() = FormatDouble(tensor[flat]);
    WriteCsvRow(out, fields);
  }
}

absl::StatusOr<ContingencyTensor> ReadTensorCsv(std::istream& in,
                                                std::span<const int> shape,
                                                std::size_t max_cells) {
  auto rows = ReadCsv(in);
  if (!rows.ok()) return rows.status();
  auto tensor =
      ContingencyTensor::Zeros({shape.begin(), shape.end()}, max_cells);
  if (!tensor.ok()) return tensor.status();
  const std::size_t width = shape.size() + 1;
  if (rows->empty() || (*rows)[0].size() != width) {
    return absl::InvalidArgumentError(
        absl::StrCat("tensor CSV header must have ", width, " columns"));
  }
  std::vector<bool> seen(tensor->num_cells(), false);
  std::vector<int> index(shape.size());
  for (std::size_t r = 1; r < rows->size(); ++r) {
    const CsvRow& row = (*rows)[r];
    if (row.size() != width) {
      return absl::InvalidArgumentError(
          absl::StrCat("tensor CSV row ", r + 1, " has ", row.size(),
                       " fields, expected ", width));
    }
    for (std::size_t k = 0; k < shape.size(); ++k) {
      const std::string& f = row[k];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), index[k]);
      if (ec != std::errc() || ptr != f.data() + f.size() || index[k] < 0 ||
          index[k] >= shape[k]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "tensor CSV row ", r + 1, ": bad index '", f, "' for mode ", k));
      }
    }
    auto value = ParseDouble(row.back());
    if (!value.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "tensor CSV row ", r + 1, ": ", value.status().message()));
    }
    const std::size_t flat = tensor->FlatIndex(index);
    if (seen[flat]) {
      return absl::InvalidArgumentError(
          absl::StrCat("tensor CSV row ", r + 1, " repeats a cell"));
    }
    seen[flat] = true;
    (*tensor)[flat] = *value;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    return absl::InvalidArgumentError("tensor CSV is missing cells");
  }
  return tensor;
}

std::string TensorToJson(const ContingencyTensor& tensor,
                         std::span<const std::string> mode_names) {
  nlohmann::json j;
  j["shape"] = std::vector<int>(tensor.shape().begin(), tensor.shape().end());
  j["names"] = ModeNames(mode_names, tensor.rank());
  j["values"] =
      std::vector<double>(tensor.cells().begin(), tensor.cells().end());
  return j.dump();
}

absl::StatusOr<ContingencyTensor> TensorFromJson(std::string_view json,
                                                 std::size_t max_cells) {
  const nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("tensor JSON is not an object");
  }
  if (!j.contains("shape") || !j["shape"].is_array() || !j.contains("values") ||
      !j["values"].is_array()) {
    return absl::InvalidArgumentError(
        "tensor JSON needs array fields 'shape' and 'values'");
  }
  std::vector<int> shape;
  for (const auto& e : j["shape"]) {
    if (!e.is_number_integer()) {
      return absl::InvalidArgumentError("tensor JSON shape must be integers");
    }
    shape.push_back(e.get<int>());
  }
  std::vector<double> values;
  for (const auto& e : j["values"]) {
    if (!e.is_number()) {
      return absl::InvalidArgumentError("tensor JSON values must be numbers");
    }
    values.push_back(e.get<double>());
  }
  return ContingencyTensor::FromCells(std::move(shape), std::move(values),
                                      max_cells);
}

}  // namespace lambdarr
