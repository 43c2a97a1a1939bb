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

#include "valgame/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "valgame/error.hpp"

namespace valgame {
namespace {

constexpr int kMaxTripleN = 12;
constexpr int kMaxCubeN = 20;

void CheckTable(std::span<const double> table, int n, int max_n) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "table needs n >= 1");
  Require(n <= max_n, ErrorCode::kEnumerationTooLarge,
          "exhaustive check limited to n <= " + std::to_string(max_n));
  Require(table.size() == (std::size_t{1} << n), ErrorCode::kInvalidArgument,
          "table size " + std::to_string(table.size()) + " is not 2^" + std::to_string(n));
}

void CheckUnitRange(std::span<const double> table) {
  for (double v : table) {
    Require(v >= 0.0 && v <= 1.0, ErrorCode::kRange,
            "self-bounding checks need values in [0, 1], got " + std::to_string(v));
  }
}

// Calls visit(violation, exponent) for every (S subset of T, j not in T)
// triple, where violation = [f(T+j) - f(T)] - [f(S+j) - f(S)] and the slack
// exponent is n - (|T| - |S|). Stops early when visit returns false.
template <typename Visit>
void ForEachTriple(std::span<const double> f, int n, Visit&& visit) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t t = 0; t < full; ++t) {
    const int t_size = std::popcount(t);
    std::uint64_t outside = full & ~t;
    while (outside != 0) {
      const std::uint64_t j = outside & (~outside + 1);
      outside &= outside - 1;
      const double gain_t = f[t | j] - f[t];
      // Submasks of t, including t itself and the empty set.
      std::uint64_t s = t;
      while (true) {
        const double violation = gain_t - (f[s | j] - f[s]);
        if (!visit(violation, n - (t_size - std::popcount(s)))) return;
        if (s == 0) break;
        s = (s - 1) & t;
      }
    }
  }
}

}  // namespace

std::vector<RelaxedSubmodReport> CheckRelaxedSubmodularity(const UtilityOracle& oracle,
                                                           std::span<const double> betas,
                                                           int trials, SeededRng& rng) {
  const int n = oracle.n();
  Require(n >= 2, ErrorCode::kInvalidGroundSet, "relaxed submodularity needs n >= 2");
  Require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be at least 1");
  for (double beta : betas) {
    Require(beta >= 0.0 && beta < 1.0, ErrorCode::kInvalidArgument, "beta must lie in [0, 1)");
  }
  std::vector<RelaxedSubmodReport> reports(betas.size());
  for (std::size_t k = 0; k < betas.size(); ++k) {
    reports[k].beta = betas[k];
    reports[k].trials = trials;
  }
  const Coalition full = Coalition::Full(n);
  for (int t = 0; t < trials; ++t) {
    Coalition big = SampleUniformCoalition(rng, n);
    while (big == full) big = SampleUniformCoalition(rng, n);
    Coalition small(n);
    for (int p : big.members()) {
      if (rng.Coin()) small.insert(p);
    }
    const std::vector<int> outside = big.Complement().members();
    const int j = outside[static_cast<std::size_t>(rng.UniformInt(outside.size()))];
    const double lhs = oracle.Evaluate(big.with(j)) - oracle.Evaluate(big);
    const double rhs = oracle.Evaluate(small.with(j)) - oracle.Evaluate(small);
    const int exponent = n - (big.size() - small.size());
    for (std::size_t k = 0; k < betas.size(); ++k) {
      if (lhs <= rhs + std::pow(betas[k], exponent) + kExactTolerance) ++reports[k].satisfied;
    }
  }
  for (RelaxedSubmodReport& r : reports) r.rate = static_cast<double>(r.satisfied) / r.trials;
  return reports;
}

RelaxedSubmodReport CheckRelaxedSubmodularity(const UtilityOracle& oracle, double beta, int trials,
                                              SeededRng& rng) {
  const double betas[] = {beta};
  return CheckRelaxedSubmodularity(oracle, betas, trials, rng).front();
}

std::optional<double> MinBetaExact(std::span<const double> table, int n) {
  CheckTable(table, n, kMaxTripleN);
  double beta_star = 0.0;
  bool covered = true;
  ForEachTriple(table, n, [&](double violation, int exponent) {
    if (violation <= kExactTolerance) return true;
    if (violation >= 1.0) {
      covered = false;
      return false;
    }
    beta_star = std::max(beta_star, std::pow(violation, 1.0 / exponent));
    return true;
  });
  if (!covered) return std::nullopt;
  return beta_star;
}

bool SatisfiesRelaxedSubmodularity(std::span<const double> table, int n, double beta) {
  CheckTable(table, n, kMaxTripleN);
  bool ok = true;
  ForEachTriple(table, n, [&](double violation, int exponent) {
    ok = violation <= std::pow(beta, exponent) + kExactTolerance;
    return ok;
  });
  return ok;
}

SelfBoundingParams CheckSelfBounding(std::span<const double> table, int n, double a, double b) {
  CheckTable(table, n, kMaxCubeN);
  CheckUnitRange(table);
  Require(a >= 0.0 && b >= 0.0, ErrorCode::kInvalidArgument, "self-bounding needs a, b >= 0");
  SelfBoundingParams out;
  out.a = a;
  out.b = b;
  for (std::size_t x = 0; x < table.size(); ++x) {
    const double fx = table[x];
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double drop = std::max(0.0, fx - table[x ^ (std::size_t{1} << i)]);
      out.max_unit_violation = std::max(out.max_unit_violation, drop - 1.0);
      sum += drop;
    }
    out.max_sum_violation = std::max(out.max_sum_violation, sum - a * fx - b);
  }
  return out;
}

Theorem1Report VerifyTheorem1(std::span<const double> table, int n, double tolerance,
                              SelfBoundingConstant constant) {
  CheckTable(table, n, kMaxTripleN);
  CheckUnitRange(table);
  Theorem1Report report;
  const std::optional<double> beta = MinBetaExact(table, n);
  if (!beta) {
    report.message = "not relaxed-submodular for any beta < 1";
    return report;
  }
  report.relaxed_submodular = true;
  report.beta_star = *beta;
  const double bb = constant == SelfBoundingConstant::kTwoBetaOverOneMinusBeta
                        ? 2.0 * *beta / (1.0 - *beta)
                        : 2.0 * *beta * *beta / (1.0 - *beta);
  report.self_bounding = CheckSelfBounding(table, n, 2.0, bb);
  report.certified = report.self_bounding.Certified(tolerance);
  report.message = report.certified ? "certified" : "self-bounding inequality violated";
  return report;
}

InfluenceReport TotalInfluence(std::span<const double> table, int n) {
  CheckTable(table, n, kMaxCubeN);
  InfluenceReport out;
  out.per_variable.assign(static_cast<std::size_t>(n), 0.0);
  const double scale = std::ldexp(1.0, -n);
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    double acc = 0.0;
    // Each unordered pair {x, x ^ e_i} appears twice in the average of
    // |d_i f| / 2, so summing over x_i = 0 once gives the same value.
    for (std::size_t x = 0; x < table.size(); ++x) {
      if ((x & bit) == 0) acc += std::abs(table[x | bit] - table[x]);
    }
    out.per_variable[static_cast<std::size_t>(i)] = acc * scale;
    out.total += acc * scale;
  }
  return out;
}

}  // namespace valgame
