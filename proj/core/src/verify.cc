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

#include "lambdarr/verify.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace lambdarr {

namespace {

using oracle::DenseMatrix;

std::string SchemeLabel(const JointScheme& s) {
  std::vector<std::string> parts;
  for (const auto& f : s.factors()) {
    parts.push_back(absl::StrFormat("%g/%d", f.lambda(), f.size()));
  }
  return absl::StrCat("[", absl::StrJoin(parts, " "), "]");
}

class Checker {
 public:
  explicit Checker(std::string prefix) : prefix_(std::move(prefix)) {}

  void Near(const std::string& name, double closed_form, double oracle,
            double tol) {
    const double err = std::abs(closed_form - oracle);
    results_.push_back({absl::StrCat(prefix_, " ", name), err <= tol,
                        closed_form, oracle, tol,
                        absl::StrFormat("|diff| = %.3e", err)});
  }

  // Max-abs error against zero.
  void Small(const std::string& name, double err, double tol) {
    results_.push_back({absl::StrCat(prefix_, " ", name), err <= tol, err, 0.0,
                        tol, absl::StrFormat("max |diff| = %.3e", err)});
  }

  void Fail(const std::string& name, std::string detail) {
    results_.push_back({absl::StrCat(prefix_, " ", name), false, 0.0, 0.0, 0.0,
                        std::move(detail)});
  }

  void Pass(const std::string& name, std::string detail) {
    results_.push_back({absl::StrCat(prefix_, " ", name), true, 0.0, 0.0, 0.0,
                        std::move(detail)});
  }

  std::vector<CheckResult> Take() { return std::move(results_); }

 private:
  std::string prefix_;
  std::vector<CheckResult> results_;
};

double MaxAbs(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

// Sum over epsilon of coefficient * (x)_i T_i(epsilon_i), assembled densely.
absl::StatusOr<DenseMatrix> DenseTermSum(const JointScheme& scheme,
                                         InverseBasis basis, std::size_t cap) {
  auto terms = scheme.InverseTerms(basis);
  if (!terms.ok()) return terms.status();
  DenseMatrix sum;
  bool first = true;
  for (const InverseTerm& term : *terms) {
    std::vector<DenseMatrix> parts;
    for (int i = 0; i < scheme.num_attributes(); ++i) {
      const std::size_t n = static_cast<std::size_t>(scheme.factor(i).size());
      const DenseMatrix u = DenseMatrix::Uniform(n);
      const DenseMatrix eye = DenseMatrix::Identity(n);
      if (basis == InverseBasis::kCenteredUniform) {
        parts.push_back(term.epsilon[i] ? oracle::Subtract(eye, u) : u);
      } else {
        parts.push_back(term.epsilon[i] ? DenseMatrix(n, n, 1.0) : eye);
      }
    }
    auto k = oracle::DenseKron(parts, cap);
    if (!k.ok()) return k.status();
    DenseMatrix scaled = oracle::Scale(*k, term.coefficient);
    sum = first ? scaled : oracle::Add(sum, scaled);
    first = false;
  }
  return sum;
}

void CheckScheme(const JointScheme& scheme, const VerifyOptions& options,
                 std::mt19937_64& rng, Checker& c) {
  std::vector<DenseMatrix> dense_factors;
  for (const auto& f : scheme.factors()) {
    dense_factors.push_back(
        oracle::LambdaForm(f.lambda(), static_cast<std::size_t>(f.size())));
  }

  // Per-factor checks.
  for (int i = 0; i < scheme.num_attributes(); ++i) {
    const LambdaMatrix& f = scheme.factor(i);
    const DenseMatrix& d = dense_factors[i];
    const std::string tag = absl::StrCat("factor ", i);
    auto h = oracle::DenseEntropyRate(d);
    if (h.ok()) {
      c.Near(absl::StrCat(tag, " entropy rate"), f.EntropyRate(), *h, 1e-10);
    } else {
      c.Fail(absl::StrCat(tag, " entropy rate"),
             std::string(h.status().message()));
    }
    auto own = f.Dense(options.dimension_cap * options.dimension_cap);
    if (own.ok()) {
      c.Small(absl::StrCat(tag, " dense entries"),
              MaxAbs(own->entries(), d.data()), 1e-15);
    }
    auto inv = oracle::DenseInvert(d);
    if (!inv.ok()) {
      c.Fail(absl::StrCat(tag, " inverse"),
             std::string(inv.status().message()));
      continue;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(f.size()));
    for (double& x : v) x = unit(rng);
    c.Small(absl::StrCat(tag, " apply vs dense multiply"),
            MaxAbs(*f.Apply(v), oracle::Multiply(d, v)), 1e-10);
    c.Small(absl::StrCat(tag, " apply_inverse vs LU inverse"),
            MaxAbs(*f.ApplyInverse(v), oracle::Multiply(*inv, v)), 1e-10);
  }

  auto kron = oracle::DenseKron(dense_factors, options.dimension_cap);
  if (!kron.ok()) {
    c.Fail("size", std::string(kron.status().message()));
    return;
  }
  const std::size_t cells = kron->rows();

  auto bis = oracle::DenseBistochasticCheck(*kron, 1e-12);
  if (bis.ok) {
    c.Pass("Kronecker product bistochastic", "rows and columns sum to 1");
  } else {
    c.Fail("Kronecker product bistochastic", bis.diagnostic);
  }

  auto h = oracle::DenseEntropyRate(*kron);
  if (h.ok()) {
    c.Near("joint entropy = sum of factor entropies", scheme.EntropyRate(), *h,
           1e-10);
  } else {
    c.Fail("joint entropy", std::string(h.status().message()));
  }

  double diag_min = 1.0;
  double diag_max = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    diag_min = std::min(diag_min, (*kron)(i, i));
    diag_max = std::max(diag_max, (*kron)(i, i));
  }
  c.Near("diagonal truthfulness (min)", scheme.DiagonalTruthfulness(), diag_min,
         1e-12);
  c.Near("diagonal truthfulness (max)", scheme.DiagonalTruthfulness(), diag_max,
         1e-12);

  auto inv = oracle::DenseInvert(*kron);
  if (!inv.ok()) {
    c.Fail("joint inverse", std::string(inv.status().message()));
    return;
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double apply_err = 0.0;
  double inverse_err = 0.0;
  double round_trip_err = 0.0;
  double mass_err = 0.0;
  for (int t = 0; t < options.random_tensors; ++t) {
    std::vector<double> cells_v(cells);
    for (double& x : cells_v) x = unit(rng);
    auto tensor = ContingencyTensor::FromCells(scheme.shape(), cells_v, cells);
    auto fwd = scheme.Apply(*tensor);
    auto back = scheme.ApplyInverse(*tensor);
    auto rt = scheme.ApplyInverse(*fwd);
    apply_err = std::max(
        apply_err, MaxAbs(fwd->cells(), oracle::Multiply(*kron, cells_v)));
    inverse_err = std::max(
        inverse_err, MaxAbs(back->cells(), oracle::Multiply(*inv, cells_v)));
    round_trip_err = std::max(round_trip_err, MaxAbs(rt->cells(), cells_v));
    mass_err = std::max({mass_err, std::abs(fwd->Sum() - tensor->Sum()),
                         std::abs(back->Sum() - tensor->Sum())});
  }
  c.Small("joint apply vs dense Kronecker multiply", apply_err, 1e-10);
  c.Small("joint apply_inverse vs LU inverse", inverse_err, 1e-10);
  c.Small("joint round trip", round_trip_err, 1e-10);
  c.Small("mass preservation", mass_err, 1e-12);

  for (InverseBasis basis :
       {InverseBasis::kCenteredUniform, InverseBasis::kIdentityAllOnes}) {
    const char* name = basis == InverseBasis::kCenteredUniform
                           ? "term expansion (I-U, U) vs LU inverse"
                           : "term expansion (I, 11^T) vs LU inverse";
    auto sum = DenseTermSum(scheme, basis, options.dimension_cap);
    if (!sum.ok()) {
      c.Fail(name, std::string(sum.status().message()));
      continue;
    }
    c.Small(name, oracle::MaxAbsDifference(*sum, *inv), 1e-9);
  }
}

}  // namespace

bool VerifyReport::AllPassed() const { return NumFailed() == 0; }

int VerifyReport::NumFailed() const {
  return static_cast<int>(std::count_if(
      checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::vector<JointScheme> DefaultVerificationSchemes() {
  struct Spec {
    std::vector<double> lambdas;
    std::vector<int> sizes;
  };
  const std::vector<Spec> specs = {
      {{0.8, 0.4}, {2, 2}},
      {{0.6, 0.7, 0.4}, {5, 5, 5}},
      {{0.9, 0.8, 0.7}, {5, 5, 5}},
      {{0.3, 0.2, 0.1}, {5, 5, 5}},
      {{1.0}, {3}},
      {{0.05, 1.0, 0.5}, {4, 2, 3}},
      {{0.25, 0.75}, {7, 6}},
  };
  std::vector<JointScheme> out;
  for (const Spec& s : specs) {
    out.push_back(*JointScheme::FromLambdas(s.lambdas, s.sizes));
  }
  return out;
}

VerifyReport RunVerification(std::span<const JointScheme> schemes,
                             const VerifyOptions& options) {
  VerifyReport report;
  std::mt19937_64 rng(options.seed);
  for (const JointScheme& scheme : schemes) {
    Checker c(SchemeLabel(scheme));
    CheckScheme(scheme, options, rng, c);
    for (auto& r : c.Take()) report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace lambdarr
