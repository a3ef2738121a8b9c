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

#include "lambdarr/randomize.h"

#include <algorithm>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "lambdarr/philox.h"

namespace lambdarr {

namespace {

__extension__ using Uint128 = unsigned __int128;

// Unbiased integer in [0, n) (Lemire's multiply-and-reject). Rejected draws
// move on to the next round of the same substream.
int UniformCategory(std::uint64_t first, std::uint32_t n, PhiloxCounter ctr,
                    const PhiloxKey& key) {
  std::uint64_t x = first;
  Uint128 m = static_cast<Uint128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - std::uint64_t{n}) % n;
    while (low < threshold) {
      ++ctr[3];
      const PhiloxBlock b = Philox4x32(ctr, key);
      x = ToUint64(b[0], b[1]);
      m = static_cast<Uint128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<int>(m >> 64);
}

int RandomizeValue(const LambdaMatrix& factor, int value, const PhiloxKey& key,
                   std::uint64_t record_index, std::uint32_t attribute) {
  const PhiloxCounter ctr = {static_cast<std::uint32_t>(record_index),
                             static_cast<std::uint32_t>(record_index >> 32),
                             attribute, 0};
  const PhiloxBlock b = Philox4x32(ctr, key);
  if (ToUnitDouble(b[0], b[1]) < factor.lambda()) return value;
  return UniformCategory(ToUint64(b[2], b[3]),
                         static_cast<std::uint32_t>(factor.size()), ctr, key);
}

absl::Status CheckRecord(const JointScheme& scheme, const Record& record) {
  if (record.values.size() !=
      static_cast<std::size_t>(scheme.num_attributes())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record has ", record.values.size(), " values; scheme has ",
        scheme.num_attributes(), " attributes"));
  }
  for (int i = 0; i < scheme.num_attributes(); ++i) {
    const int v = record.values[i];
    if (v < 0 || v >= scheme.factor(i).size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", i, ": category index ", v, " outside [0, ",
                       scheme.factor(i).size(), ")"));
    }
  }
  return absl::OkStatus();
}

Record RandomizeChecked(const JointScheme& scheme, const Record& record,
                        const PhiloxKey& key, std::uint64_t record_index) {
  Record out;
  out.values.resize(record.values.size());
  for (int i = 0; i < scheme.num_attributes(); ++i) {
    out.values[i] = RandomizeValue(scheme.factor(i), record.values[i], key,
                                   record_index, static_cast<std::uint32_t>(i));
  }
  return out;
}

}  // namespace

absl::StatusOr<Record> RandomizeRecord(const JointScheme& scheme,
                                       const Record& record, SeedSpec seed,
                                       std::uint64_t record_index) {
  if (auto s = CheckRecord(scheme, record); !s.ok()) return s;
  return RandomizeChecked(scheme, record, PhiloxKeyFromSeed(seed.master_seed),
                          record_index);
}

absl::StatusOr<std::vector<Record>> RandomizeRecords(
    const JointScheme& scheme, std::span<const Record> records, SeedSpec seed,
    int num_threads) {
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (auto s = CheckRecord(scheme, records[r]); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", r, ": ", s.message()));
    }
  }
  const PhiloxKey key = PhiloxKeyFromSeed(seed.master_seed);
  std::vector<Record> out(records.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      out[r] = RandomizeChecked(scheme, records[r], key, r);
    }
  };
  const std::size_t threads =
      static_cast<std::size_t>(std::clamp(num_threads, 1, 256));
  if (threads == 1 || records.size() < 2 * threads) {
    work(0, records.size());
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (records.size() + threads - 1) / threads;
  for (std::size_t begin = 0; begin < records.size(); begin += chunk) {
    pool.emplace_back(work, begin, std::min(records.size(), begin + chunk));
  }
  pool.clear();  // joins
  return out;
}

absl::StatusOr<std::vector<double>> TransformNumeric(
    double lambda, std::span<const double> x) {
  if (!(lambda > 0.0) || lambda > 1.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("lambda must lie in (0, 1], got %.17g", lambda));
  }
  if (x.size() < 2) {
    return absl::InvalidArgumentError(
        "numeric transform needs at least 2 individuals");
  }
  double sum = 0.0;
  for (double v : x) sum += v;
  const double shift = (1.0 - lambda) * (sum / static_cast<double>(x.size()));
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = lambda * x[i] + shift;
  return out;
}

absl::StatusOr<JointScheme> SchemeForSchema(const Schema& schema,
                                            std::span<const double> lambdas,
                                            double min_lambda) {
  if (lambdas.size() != static_cast<std::size_t>(schema.num_attributes())) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", lambdas.size(), " lambdas for a schema with ",
                     schema.num_attributes(), " attributes"));
  }
  std::vector<LambdaMatrix> factors;
  for (int i : schema.categorical_attributes()) {
    auto f = LambdaMatrix::Create(
        lambdas[i], schema.attribute(i).num_categories(), min_lambda);
    if (!f.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", schema.attribute(i).name,
                       "': ", f.status().message()));
    }
    factors.push_back(*f);
  }
  return JointScheme::Create(std::move(factors));
}

absl::StatusOr<Dataset> RandomizeDataset(const Dataset& data,
                                         const RandomizationPlan& plan) {
  const Schema& schema = data.schema;
  if (plan.mode == RandomizationMode::kLocalSimulated &&
      !schema.numeric_attributes().empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "numeric attribute '",
        schema.attribute(schema.numeric_attributes()[0]).name,
        "' cannot be randomized in local mode: the category set must be "
        "fixed before collection, so categorize it first or use central "
        "mode"));
  }
  if (plan.lambdas.size() !=
      static_cast<std::size_t>(schema.num_attributes())) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", plan.lambdas.size(), " lambdas for a schema with ",
                     schema.num_attributes(), " attributes"));
  }

  Dataset out{schema, {}, {}};
  if (!schema.categorical_attributes().empty()) {
    auto scheme = SchemeForSchema(schema, plan.lambdas, plan.min_lambda);
    if (!scheme.ok()) return scheme.status();
    auto records =
        RandomizeRecords(*scheme, data.records, plan.seed, plan.num_threads);
    if (!records.ok()) return records.status();
    out.records = *std::move(records);
  } else {
    out.records = data.records;
  }

  for (std::size_t k = 0; k < schema.numeric_attributes().size(); ++k) {
    const int attr = schema.numeric_attributes()[k];
    const double lambda = plan.lambdas[attr];
    if (data.numeric_columns[k].empty()) {
      out.numeric_columns.emplace_back();
      continue;
    }
    if (lambda < plan.min_lambda) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "attribute '%s': lambda %.3g is below the configured floor %.3g",
          schema.attribute(attr).name, lambda, plan.min_lambda));
    }
    auto column = TransformNumeric(lambda, data.numeric_columns[k]);
    if (!column.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", schema.attribute(attr).name,
                       "': ", column.status().message()));
    }
    out.numeric_columns.push_back(*std::move(column));
  }
  return out;
}

}  // namespace lambdarr
