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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "valgame/error.hpp"
#include "valgame/lp.hpp"
#include "valgame/min_norm.hpp"
#include "valgame/valuation.hpp"

namespace valgame {

std::string ValueVector::ToJson() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["n"] = n();
  j["values"] = values;
  if (excess) j["excess"] = *excess;
  j["budget_used"] = budget_used;
  if (seed) j["seed"] = *seed;
  if (!warnings.empty()) j["warnings"] = warnings;
  return j.dump(2);
}

ValueVector ValueVector::FromJson(std::string_view text) {
  ValueVector v;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    v.method = j.at("method").get<std::string>();
    v.values = j.at("values").get<std::vector<double>>();
    v.budget_used = j.at("budget_used").get<std::uint64_t>();
    if (j.contains("excess")) v.excess = j.at("excess").get<double>();
    if (j.contains("seed")) v.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("warnings")) v.warnings = j.at("warnings").get<std::vector<std::string>>();
    Require(j.at("n").get<int>() == v.n(), ErrorCode::kParse, "value vector n does not match values");
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("value vector JSON: ") + e.what());
  }
  return v;
}

std::vector<double> ShapleyFromTable(std::span<const double> table, int n) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "n must be >= 1");
  Require(n <= kMaxExactShapleyPlayers, ErrorCode::kEnumerationTooLarge,
          "exact Shapley limited to n <= " + std::to_string(kMaxExactShapleyPlayers));
  const std::size_t size = std::size_t{1} << n;
  Require(table.size() == size, ErrorCode::kInvalidArgument, "table size is not 2^n");
  // weight[s] = 1 / (n C(n-1, s))
  std::vector<double> weight(static_cast<std::size_t>(n));
  double binom = 1.0;
  for (int s = 0; s < n; ++s) {
    weight[s] = 1.0 / (n * binom);
    binom = binom * (n - 1 - s) / (s + 1);
  }
  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    const int s = std::popcount(x);
    if (s == n) continue;
    const double w = weight[s];
    const double fx = table[x];
    for (int i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      if ((x & bit) == 0) phi[i] += w * (table[x | bit] - fx);
    }
  }
  return phi;
}

ValueVector ExactShapley(const UtilityOracle& oracle) {
  const int n = oracle.n();
  Require(n <= kMaxExactShapleyPlayers, ErrorCode::kEnumerationTooLarge,
          "exact Shapley limited to n <= " + std::to_string(kMaxExactShapleyPlayers));
  const std::uint64_t before = oracle.eval_count();
  const std::vector<double> table = FullTable(oracle);
  ValueVector out;
  out.method = "exact_shapley";
  out.values = ShapleyFromTable(table, n);
  out.budget_used = oracle.eval_count() - before;
  return out;
}

ValueVector LeastCoreFromConstraints(int n, std::span<const CoalitionValue> constraints,
                                     double grand_value) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "n must be >= 1");
  Require(std::isfinite(grand_value), ErrorCode::kInvalidArgument, "U(D) must be finite");
  std::vector<CoalitionValue> unique;
  unique.reserve(constraints.size() + 1);
  std::unordered_map<Coalition, std::size_t> seen;
  for (const CoalitionValue& c : constraints) {
    Require(c.coalition.n() == n, ErrorCode::kInvalidArgument, "constraint over the wrong ground set");
    Require(std::isfinite(c.value), ErrorCode::kInvalidArgument, "non-finite constraint value");
    if (seen.emplace(c.coalition, unique.size()).second) unique.push_back(c);
  }
  // The grand coalition is part of the definition and keeps the program bounded.
  const Coalition full = Coalition::Full(n);
  if (!seen.contains(full)) unique.push_back({full, grand_value});
  const int k = static_cast<int>(unique.size());

  // Dual: max sum_k y_k U(S_k) + z U(D)
  //       s.t. sum_k y_k = 1,  sum_{k: i in S_k} y_k + z = 0 (each i),  y >= 0.
  LinearProgram dual(k + 1);
  dual.SetFree(k);
  for (int c = 0; c < k; ++c) dual.objective[c] = -unique[c].value;
  dual.objective[k] = -grand_value;
  dual.a_eq.Reserve(n + 1);
  std::vector<double> row(static_cast<std::size_t>(k + 1), 1.0);
  row[k] = 0.0;
  dual.AddEquality(row, 1.0);
  std::vector<std::vector<double>> player_rows(static_cast<std::size_t>(n),
                                               std::vector<double>(static_cast<std::size_t>(k + 1), 0.0));
  for (int c = 0; c < k; ++c) {
    for (int p : unique[c].coalition.members()) player_rows[p][c] = 1.0;
  }
  for (int p = 0; p < n; ++p) {
    player_rows[p][k] = 1.0;
    dual.AddEquality(player_rows[p], 0.0);
  }
  player_rows.clear();
  const LpSolution stage1 = SolveLp(dual);
  Require(stage1.status == LpStatus::kOptimal, ErrorCode::kInfeasible,
          "least-core stage 1 ended " + std::string(LpStatusName(stage1.status)));
  const double e_star = -stage1.objective_value;

  LinearProgram poly(n);
  for (int i = 0; i < n; ++i) poly.SetFree(i);
  poly.a_ineq.Reserve(k);
  std::vector<double> ineq(static_cast<std::size_t>(n));
  for (const CoalitionValue& c : unique) {
    std::fill(ineq.begin(), ineq.end(), 0.0);
    for (int p : c.coalition.members()) ineq[p] = -1.0;
    poly.AddInequality(ineq, -(c.value - e_star - kLeastCoreTieBreakSlack));
  }
  std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  poly.AddEquality(ones, grand_value);
  const MinNormResult stage2 = MinL2OnPolytope(poly);

  ValueVector out;
  out.method = "least_core";
  out.values = stage2.x;
  out.excess = e_star;
  if (!stage2.converged) {
    out.warnings.push_back("min-norm tie-break stopped with KKT residual " +
                           std::to_string(stage2.kkt_residual));
  }
  return out;
}

ValueVector LeastCoreFromTable(std::span<const double> table, int n) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "n must be >= 1");
  Require(n <= kMaxExactLeastCorePlayers, ErrorCode::kEnumerationTooLarge,
          "exact least core limited to n <= " + std::to_string(kMaxExactLeastCorePlayers));
  const std::size_t size = std::size_t{1} << n;
  Require(table.size() == size, ErrorCode::kInvalidArgument, "table size is not 2^n");
  std::vector<CoalitionValue> all;
  all.reserve(size);
  for (std::size_t x = 0; x < size; ++x) all.push_back({Coalition::FromMask(n, x), table[x]});
  ValueVector out = LeastCoreFromConstraints(n, all, table[size - 1]);
  out.method = "exact_least_core";
  return out;
}

ValueVector ExactLeastCore(const UtilityOracle& oracle) {
  const int n = oracle.n();
  Require(n <= kMaxExactLeastCorePlayers, ErrorCode::kEnumerationTooLarge,
          "exact least core limited to n <= " + std::to_string(kMaxExactLeastCorePlayers));
  const std::uint64_t before = oracle.eval_count();
  const std::vector<double> table = FullTable(oracle);
  ValueVector out = LeastCoreFromTable(table, n);
  out.budget_used = oracle.eval_count() - before;
  return out;
}

ErrorNorms CompareValues(std::span<const double> estimate, std::span<const double> exact) {
  Require(estimate.size() == exact.size(), ErrorCode::kInvalidArgument,
          "value vectors differ in length");
  ErrorNorms e;
  double sq = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double d = std::abs(estimate[i] - exact[i]);
    e.l1 += d;
    sq += d * d;
    e.linf = std::max(e.linf, d);
  }
  e.l2 = std::sqrt(sq);
  return e;
}

}  // namespace valgame
