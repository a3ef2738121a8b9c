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

// Cross-checks of every closed-form operation against the dense oracle.

#ifndef LAMBDARR_VERIFY_H_
#define LAMBDARR_VERIFY_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lambdarr/joint_scheme.h"
#include "lambdarr/oracle.h"

namespace lambdarr {

struct CheckResult {
  std::string name;
  bool passed;
  // The two quantities compared (closed form vs. oracle) or, for predicate
  // checks, the measured error and the tolerance.
  double closed_form;
  double oracle;
  double tolerance;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool AllPassed() const;
  int NumFailed() const;
};

struct VerifyOptions {
  std::size_t dimension_cap = oracle::kDefaultDimensionCap;
  std::uint64_t seed = 20240917;
  int random_tensors = 5;
};

// The built-in scheme set: the 2x2 pair (0.8, 0.4), the 5x5x5 triple
// (0.6, 0.7, 0.4), and a handful of pinned mixed-size schemes.
std::vector<JointScheme> DefaultVerificationSchemes();

// Runs every check on every scheme whose joint size fits the cap. Schemes
// over the cap contribute a single failed "size" check.
VerifyReport RunVerification(std::span<const JointScheme> schemes,
                             const VerifyOptions& options = {});

}  // namespace lambdarr

#endif  // LAMBDARR_VERIFY_H_
