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

// Minimal RFC 4180 CSV: comma separator, double-quote quoting with "" as an
// escaped quote, quoted fields may span lines. CRLF and LF line ends are both
// accepted; output always uses LF.

#ifndef LAMBDARR_CSV_H_
#define LAMBDARR_CSV_H_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace lambdarr {

using CsvRow = std::vector<std::string>;

// Blank lines are skipped.
absl::StatusOr<std::vector<CsvRow>> ReadCsv(std::istream& in);

void WriteCsvRow(std::ostream& out, std::span<const std::string> fields);

// Whole-field parse; leading/trailing blanks are tolerated.
absl::StatusOr<double> ParseDouble(std::string_view text);

// 17 significant digits; parses back to the identical double.
std::string FormatDouble(double x);

}  // namespace lambdarr

#endif  // LAMBDARR_CSV_H_
