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

#include "lambdarr/joint_scheme.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace lambdarr {

namespace {

// Applies x <- scale * (x - mean) + mean along every fibre of `mode`, where
// mean is the fibre average. scale = lambda gives the forward map and
// scale = 1 / lambda the inverse.
void ScaleDeviationsAlongMode(ContingencyTensor& t, int mode, double scale) {
  const std::size_t n = static_cast<std::size_t>(t.shape()[mode]);
  const std::size_t stride = t.stride(mode);
  const std::size_t block = n * stride;
  const std::size_t outer = t.num_cells() / block;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> means(stride);
  std::span<double> cells = t.mutable_cells();
  for (std::size_t o = 0; o < outer; ++o) {
    double* base = cells.data() + o * block;
    std::fill(means.begin(), means.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* fibre_row = base + i * stride;
      for (std::size_t j = 0; j < stride; ++j) means[j] += fibre_row[j];
    }
    for (double& m : means) m *= inv_n;
    for (std::size_t i = 0; i < n; ++i) {
      double* fibre_row = base + i * stride;
      for (std::size_t j = 0; j < stride; ++j) {
        fibre_row[j] = scale * (fibre_row[j] - means[j]) + means[j];
      }
    }
  }
}

}  // namespace

int InverseTerm::Weight() const {
  int w = 0;
  for (auto e : epsilon) w += e;
  return w;
}

absl::StatusOr<JointScheme> JointScheme::Create(
    std::vector<LambdaMatrix> factors) {
  if (factors.empty()) {
    return absl::InvalidArgumentError("a scheme needs at least one attribute");
  }
  return JointScheme(std::move(factors));
}

absl::StatusOr<JointScheme> JointScheme::FromLambdas(
    std::span<const double> lambdas, std::span<const int> sizes,
    double min_lambda) {
  if (lambdas.size() != sizes.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", lambdas.size(), " lambdas for ", sizes.size(), " attributes"));
  }
  std::vector<LambdaMatrix> factors;
  factors.reserve(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    auto f = LambdaMatrix::Create(lambdas[i], sizes[i], min_lambda);
    if (!f.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", i, ": ", f.status().message()));
    }
    factors.push_back(*f);
  }
  return Create(std::move(factors));
}

std::vector<int> JointScheme::shape() const {
  std::vector<int> out;
  for (const auto& f : factors_) out.push_back(f.size());
  return out;
}

std::vector<double> JointScheme::lambdas() const {
  std::vector<double> out;
  for (const auto& f : factors_) out.push_back(f.lambda());
  return out;
}

double JointScheme::EntropyRate() const {
  double bits = 0.0;
  for (const auto& f : factors_) bits += f.EntropyRate();
  return bits;
}

double JointScheme::MaxEntropyRate() const {
  double bits = 0.0;
  for (const auto& f : factors_)
    bits += std::log2(static_cast<double>(f.size()));
  return bits;
}

double JointScheme::Strength() const {
  return EntropyRate() / MaxEntropyRate();
}

double JointScheme::DiagonalTruthfulness() const {
  double p = 1.0;
  for (const auto& f : factors_) p *= f.diagonal();
  return p;
}

absl::Status JointScheme::CheckShape(const ContingencyTensor& t) const {
  const std::vector<int> want = shape();
  if (!std::equal(want.begin(), want.end(), t.shape().begin(),
                  t.shape().end())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "tensor shape (", absl::StrJoin(t.shape(), ","),
        ") does not match scheme shape (", absl::StrJoin(want, ","), ")"));
  }
  return absl::OkStatus();
}

absl::Status JointScheme::ApplyInPlace(ContingencyTensor& t) const {
  if (auto s = CheckShape(t); !s.ok()) return s;
  for (int k = 0; k < num_attributes(); ++k) {
    if (factors_[k].lambda() == 1.0) continue;
    ScaleDeviationsAlongMode(t, k, factors_[k].lambda());
  }
  return absl::OkStatus();
}

absl::StatusOr<ContingencyTensor> JointScheme::Apply(
    const ContingencyTensor& t) const {
  ContingencyTensor out = t;
  if (auto s = ApplyInPlace(out); !s.ok()) return s;
  return out;
}

absl::Status JointScheme::ApplyInverseInPlace(ContingencyTensor& t) const {
  if (auto s = CheckShape(t); !s.ok()) return s;
  for (int k = 0; k < num_attributes(); ++k) {
    if (factors_[k].lambda() == 1.0) continue;
    ScaleDeviationsAlongMode(t, k, 1.0 / factors_[k].lambda());
  }
  return absl::OkStatus();
}

absl::StatusOr<ContingencyTensor> JointScheme::ApplyInverse(
    const ContingencyTensor& t) const {
  ContingencyTensor out = t;
  if (auto s = ApplyInverseInPlace(out); !s.ok()) return s;
  return out;
}

absl::StatusOr<std::vector<InverseTerm>> JointScheme::InverseTerms(
    InverseBasis basis) const {
  const int m = num_attributes();
  if (m > kMaxExpansionAttributes) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "expansion of ", m, " attributes has 2^", m, " terms; the limit is ",
        kMaxExpansionAttributes, " attributes"));
  }
  const std::uint32_t count = std::uint32_t{1} << m;
  std::vector<InverseTerm> terms;
  terms.reserve(count);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    InverseTerm term{std::vector<std::uint8_t>(m), 1.0};
    for (int i = 0; i < m; ++i) {
      const bool one = (bits >> (m - 1 - i)) & 1u;
      term.epsilon[i] = one ? 1 : 0;
      const double lambda = factors_[i].lambda();
      switch (basis) {
        case InverseBasis::kCenteredUniform:
          if (one) term.coefficient /= lambda;
          break;
        case InverseBasis::kIdentityAllOnes:
          term.coefficient *=
              one ? -(1.0 - lambda) / (lambda * factors_[i].size())
                  : 1.0 / lambda;
          break;
      }
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace lambdarr
