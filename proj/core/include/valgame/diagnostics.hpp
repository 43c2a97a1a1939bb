// Copyright 2026 The valgame Authors
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

#ifndef VALGAME_DIAGNOSTICS_HPP_
#define VALGAME_DIAGNOSTICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "valgame/oracle.hpp"
#include "valgame/rng.hpp"

namespace valgame {

// Absolute slack used by every exact inequality check.
inline constexpr double kExactTolerance = 1e-9;

// Relaxed diminishing returns with slack beta^(n - (|T| - |S|)):
//   U(T + j) - U(T) <= U(S + j) - U(S) + beta^(n - (|T| - |S|)).
struct RelaxedSubmodReport {
  double beta = 0.0;
  int trials = 0;
  int satisfied = 0;
  double rate = 0.0;
};

// Each trial draws T uniformly (redrawn while T is the full set), S uniformly
// among subsets of T, and j uniformly from the complement of T.
RelaxedSubmodReport CheckRelaxedSubmodularity(const UtilityOracle& oracle, double beta, int trials,
                                              SeededRng& rng);

// Same trial set scored at several betas; the stream is consumed only once.
std::vector<RelaxedSubmodReport> CheckRelaxedSubmodularity(const UtilityOracle& oracle,
                                                           std::span<const double> betas,
                                                           int trials, SeededRng& rng);

// Smallest beta in [0, 1) for which every (S subset of T, j not in T) triple
// passes, or nullopt when some violation reaches 1. Table is indexed by
// bitmask; n <= 12.
std::optional<double> MinBetaExact(std::span<const double> table, int n);

// Does the table pass the relaxed check at `beta` on every triple?
bool SatisfiesRelaxedSubmodularity(std::span<const double> table, int n, double beta);

struct SelfBoundingParams {
  double a = 0.0;
  double b = 0.0;
  double max_unit_violation = 0.0;  // max over x, i of (f(x) - min_{x_i} f(x)) - 1
  double max_sum_violation = 0.0;   // max over x of sum_i (f(x) - min_{x_i} f(x)) - a f(x) - b

  bool Certified(double tolerance = kExactTolerance) const {
    return max_unit_violation <= tolerance && max_sum_violation <= tolerance;
  }
};

// Exhaustive check of both self-bounding inequalities. Values must lie in
// [0, 1]; n <= 20. Violations are clamped at 0 when satisfied.
SelfBoundingParams CheckSelfBounding(std::span<const double> table, int n, double a, double b);

// Constant for the b parameter implied by relaxed submodularity.
enum class SelfBoundingConstant {
  kTwoBetaOverOneMinusBeta,         // 2 beta / (1 - beta)
  kTwoBetaSquaredOverOneMinusBeta,  // 2 beta^2 / (1 - beta)
};

struct Theorem1Report {
  bool relaxed_submodular = false;  // false when no beta < 1 works
  double beta_star = 0.0;
  SelfBoundingParams self_bounding;
  bool certified = false;
  std::string message;
};

// Computes beta* and checks (2, b(beta*))-self-bounding on the full table.
Theorem1Report VerifyTheorem1(
    std::span<const double> table, int n, double tolerance = kExactTolerance,
    SelfBoundingConstant constant = SelfBoundingConstant::kTwoBetaOverOneMinusBeta);

struct InfluenceReport {
  std::vector<double> per_variable;
  double total = 0.0;
};

// Inf_i = 2^-n sum_x |f(x with i=1) - f(x with i=0)| / 2. n <= 20.
InfluenceReport TotalInfluence(std::span<const double> table, int n);

}  // namespace valgame

#endif  // VALGAME_DIAGNOSTICS_HPP_
