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

#ifndef VALGAME_VALUATION_HPP_
#define VALGAME_VALUATION_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "valgame/model.hpp"
#include "valgame/oracle.hpp"
#include "valgame/rng.hpp"
#include "valgame/samples.hpp"

namespace valgame {

struct ValueVector {
  std::string method;
  std::vector<double> values;
  std::uint64_t budget_used = 0;
  std::optional<double> excess;  // least core e*
  std::optional<std::uint64_t> seed;
  std::vector<std::string> warnings;

  int n() const { return static_cast<int>(values.size()); }

  // {method, n, values, excess?, budget_used, seed, warnings?}
  std::string ToJson() const;
  static ValueVector FromJson(std::string_view text);
};

// ---- Exact solution concepts ---------------------------------------------------

inline constexpr int kMaxExactShapleyPlayers = 20;
inline constexpr int kMaxExactLeastCorePlayers = 16;

// phi_i = sum_{S without i} (U(S + i) - U(S)) / (n C(n-1, |S|)) over a
// bitmask-indexed table.
std::vector<double> ShapleyFromTable(std::span<const double> table, int n);

// Evaluates every coalition once. n <= 20.
ValueVector ExactShapley(const UtilityOracle& oracle);

struct CoalitionValue {
  Coalition coalition;
  double value;
};

// Least core over an explicit constraint family:
//   stage 1  e* = min e  s.t. x(S) + e >= U(S) for listed S, sum x = grand_value
//   stage 2  argmin |x|_2 s.t. x(S) >= U(S) - e* - 1e-9, sum x = grand_value.
// Stage 1 is solved through its LP dual (n + 1 rows, one column per
// coalition). Repeated coalitions keep their first listed value.
ValueVector LeastCoreFromConstraints(int n, std::span<const CoalitionValue> constraints,
                                     double grand_value);

ValueVector LeastCoreFromTable(std::span<const double> table, int n);

// Every coalition, including the empty and grand coalitions. n <= 16.
ValueVector ExactLeastCore(const UtilityOracle& oracle);

inline constexpr double kLeastCoreTieBreakSlack = 1e-9;

// ---- Sampler / estimator pairs ---------------------------------------------------

// A sampler may call oracle.Evaluate at most `budget` times.
using Sampler = std::function<std::vector<UtilitySample>(const UtilityOracle& oracle,
                                                          std::uint64_t budget, SeededRng& rng)>;
// Estimators see only the samples.
using Estimator = std::function<ValueVector(int n, std::span<const UtilitySample> samples)>;

struct HeuristicPair {
  std::string name;
  Sampler sample;
  Estimator estimate;
};

// Permutation sampling. The sampler walks uniform permutations from the empty
// coalition, one evaluation per prefix, until the budget is spent; the last
// walk may be cut short. The estimator averages marginal contributions over
// the complete walks it finds. Budget must be >= n + 1.
HeuristicPair PermutationPair();

struct GroupTestingConfig {
  // Feasibility target: the difference constraints should hold within
  // epsilon / (2 sqrt(n)); a warning is attached when the fit exceeds it.
  double epsilon = 0.1;
  // The estimated differences are all of the form c (A_i - A_j), so the
  // min-slack program has the unique zero-slack solution
  //   x_i = c A_i + (U(D) - U(empty) - c sum_j A_j) / n.
  // Setting this solves the LP with the simplex instead.
  bool solve_lp = false;
};

// Group testing. The sampler evaluates D and the empty coalition, then draws
// tests with size k ~ q(k) proportional to 1/k + 1/(n-k) and a uniform
// coalition of that size. The estimator forms
//   dU_ij = (Z / T) sum_t U(S_t) (1[i in S_t] - 1[j in S_t]),
// Z = 2 sum_{k=1}^{n-1} 1/k, and solves
//   min s  s.t. |x_i - x_j - dU_ij| <= s,  sum x = U(D) - U(empty).
HeuristicPair GroupTestingPair(GroupTestingConfig cfg = {});

// Monte-Carlo least core. The grand coalition is always evaluated first; the
// remaining budget - 1 evaluations are uniform coalitions. The estimator runs
// LeastCoreFromConstraints on every sampled coalition.
HeuristicPair MonteCarloLeastCorePair();

// Exhaustive formula on sampled tables. The sampler visits distinct coalitions
// in a seeded random order; the estimator needs every coalition present.
HeuristicPair ExactFormulaPair();

// Runs sampler then estimator; budget_used is the oracle's eval_count delta.
ValueVector RunHeuristic(const HeuristicPair& pair, const UtilityOracle& oracle,
                         std::uint64_t budget, const SeededRng& rng);

std::pair<ValueVector, std::vector<UtilitySample>> RunHeuristicWithSamples(
    const HeuristicPair& pair, const UtilityOracle& oracle, std::uint64_t budget,
    const SeededRng& rng);

ValueVector PermutationSampling(const UtilityOracle& oracle, std::uint64_t budget,
                                const SeededRng& rng);
ValueVector GroupTestingShapley(const UtilityOracle& oracle, std::uint64_t budget,
                                const SeededRng& rng, double epsilon = 0.1);
ValueVector MonteCarloLeastCore(const UtilityOracle& oracle, std::uint64_t budget,
                                const SeededRng& rng);

// ---- Data utility learning ---------------------------------------------------------

// Predicted utilities of a learned model, exposed as an oracle so samplers can
// draw S_pred with their own coalition law. Bounds are unbounded.
class ModelOracle final : public CountingOracle {
 public:
  explicit ModelOracle(std::shared_ptr<const UtilityModel> model);

  const UtilityModel& model() const { return *model_; }

 protected:
  double Compute(const Coalition& coalition) const override;

 private:
  std::shared_ptr<const UtilityModel> model_;
};

// Learns f_u from true samples; returns it as an oracle.
using Learner = std::function<std::shared_ptr<const UtilityOracle>(
    int n, std::span<const UtilitySample> train, SeededRng& rng)>;

// Wraps a model fitter; the fitter receives a seed drawn from the learner rng.
Learner ModelLearner(std::function<UtilityModel(std::span<const UtilitySample>, std::uint64_t)> fit);
// Ignores the training data and returns `oracle` (perfect utility model).
Learner PerfectLearner(std::shared_ptr<const UtilityOracle> oracle);

struct DulResult {
  ValueVector values;
  std::vector<UtilitySample> train;
  std::vector<UtilitySample> predicted;
};

// Runs S_tr = sampler(oracle, m_train), f_u = learner(S_tr),
// S_pred = sampler(f_u, m_eval) marked predicted, and returns
// estimator(S_tr + S_pred). With m_eval = 0 the learner is skipped and the
// values equal RunHeuristic(pair, oracle, m_train, rng).
DulResult DulBoostWithSamples(const HeuristicPair& pair, const UtilityOracle& oracle,
                              std::uint64_t m_train, std::uint64_t m_eval, const Learner& learner,
                              const SeededRng& rng);

ValueVector DulBoost(const HeuristicPair& pair, const UtilityOracle& oracle, std::uint64_t m_train,
                     std::uint64_t m_eval, const Learner& learner, const SeededRng& rng);

// ---- Error norms ---------------------------------------------------------------------

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

ErrorNorms CompareValues(std::span<const double> estimate, std::span<const double> exact);

}  // namespace valgame

#endif  // VALGAME_VALUATION_HPP_
