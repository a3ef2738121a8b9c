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

#ifndef LAMBDARR_TENSOR_H_
#define LAMBDARR_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace lambdarr {

inline constexpr std::size_t kDefaultTensorCellCap = 10'000'000;

// Multi-way array of frequencies over a category grid.
//
// Layout is row-major with mode 0 varying slowest, so the flat cell vector is
// vec(T) in the ordering of P_0 (x) P_1 (x) ... (x) P_{m-1}: the cell index
// of (i_0, ..., i_{m-1}) is sum_k i_k * stride_k with stride_{m-1} = 1.
class ContingencyTensor {
 public:
  // Zero-filled. Every extent must be >= 1 and the cell count <= max_cells.
  static absl::StatusOr<ContingencyTensor> Zeros(
      std::vector<int> shape, std::size_t max_cells = kDefaultTensorCellCap);
  static absl::StatusOr<ContingencyTensor> FromCells(
      std::vector<int> shape, std::vector<double> cells,
      std::size_t max_cells = kDefaultTensorCellCap);

  std::span<const int> shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  std::size_t num_cells() const { return cells_.size(); }
  std::span<const double> cells() const { return cells_; }
  std::span<double> mutable_cells() { return cells_; }

  // Distance between consecutive indices along `mode`.
  std::size_t stride(int mode) const;

  std::size_t FlatIndex(std::span<const int> index) const;
  // Inverse of FlatIndex; writes rank() entries.
  void Unflatten(std::size_t flat, std::span<int> index) const;

  double& operator[](std::size_t flat) { return cells_[flat]; }
  double operator[](std::size_t flat) const { return cells_[flat]; }

  double Sum() const;

  // Sums out every mode not listed in `keep`; the result keeps the listed
  // modes in ascending order. `keep` must be non-empty and duplicate-free.
  absl::StatusOr<ContingencyTensor> Marginal(std::span<const int> keep) const;

  // One-dimensional marginal along `mode`.
  std::vector<double> MarginalVector(int mode) const;

 private:
  ContingencyTensor(std::vector<int> shape, std::vector<double> cells);

  std::vector<int> shape_;
  std::vector<std::size_t> strides_;
  std::vector<double> cells_;
};

// Product of extents, or an error when it overflows or exceeds `max_cells`.
absl::StatusOr<std::size_t> CellCount(std::span<const int> shape,
                                      std::size_t max_cells);

// CSV: header "<name_0>,...,<name_{m-1}>,value", then one row per cell in flat
// order with the integer index tuple followed by the value. Values carry 17
// significant digits. Names default to "a0", "a1", ... when empty.
void WriteTensorCsv(std::ostream& out, const ContingencyTensor& tensor,
                    std::span<const std::string> mode_names = {});
// Every cell must appear exactly once; rows may come in any order.
absl::StatusOr<ContingencyTensor> ReadTensorCsv(
    std::istream& in, std::span<const int> shape,
    std::size_t max_cells = kDefaultTensorCellCap);

// JSON: {"shape": [...], "names": [...], "values": [...]} with values in flat
// order.
std::string TensorToJson(const ContingencyTensor& tensor,
                         std::span<const std::string> mode_names = {});
absl::StatusOr<ContingencyTensor> TensorFromJson(
    std::string_view json, std::size_t max_cells = kDefaultTensorCellCap);

}  // namespace lambdarr

#endif  // LAMBDARR_TENSOR_H_
