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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "lambdarr/joint_scheme.h"
#include "lambdarr/oracle.h"
#include "lambdarr/randomize.h"

namespace lambdarr {
namespace {

JointScheme UniformScheme(int m, int n, double lambda) {
  return *JointScheme::FromLambdas(std::vector<double>(m, lambda),
                                   std::vector<int>(m, n));
}

ContingencyTensor Filled(int m, int n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto t = *ContingencyTensor::Zeros(std::vector<int>(m, n));
  for (double& x : t.mutable_cells()) x = unit(rng);
  return t;
}

// Args: number of attributes, categories per attribute.
void BM_JointApplyInverse(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const JointScheme s = UniformScheme(m, n, 0.6);
  ContingencyTensor t = Filled(m, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.ApplyInverseInPlace(t));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * t.num_cells());
}
BENCHMARK(BM_JointApplyInverse)
    ->Args({3, 5})
    ->Args({8, 4})
    ->Args({10, 4})
    ->Args({4, 20})
    ->Unit(benchmark::kMicrosecond);

// Dense LU on the materialized product, for contrast at sizes where it
// still fits.
void BM_DenseInverse(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  std::vector<oracle::DenseMatrix> factors(m, oracle::LambdaForm(0.6, n));
  const oracle::DenseMatrix dense = *oracle::DenseKron(factors, 4096);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::DenseInvert(dense));
  }
}
BENCHMARK(BM_DenseInverse)
    ->Args({3, 5})
    ->Args({4, 4})
    ->Args({5, 4})
    ->Unit(benchmark::kMillisecond);

void BM_RandomizeRecords(benchmark::State& state) {
  const JointScheme s = *JointScheme::FromLambdas(
      std::vector<double>{0.6, 0.7, 0.4}, std::vector<int>{5, 5, 5});
  std::vector<Record> records(100000);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].values = {static_cast<int>(i % 5), static_cast<int>(i / 5 % 5),
                         static_cast<int>(i / 25 % 5)};
  }
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RandomizeRecords(s, records, {1}, threads));
  }
  state.SetItemsProcessed(state.iterations() * records.size());
}
BENCHMARK(BM_RandomizeRecords)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lambdarr

BENCHMARK_MAIN();
