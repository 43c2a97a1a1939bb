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
#include <numeric>
#include <optional>
#include <string>

#include "valgame/error.hpp"
#include "valgame/lp.hpp"
#include "valgame/valuation.hpp"

namespace valgame {
namespace {

// Player added when going from `prev` to `cur`, or -1 if `cur` is not `prev`
// plus exactly one player.
int AddedPlayer(const Coalition& prev, const Coalition& cur) {
  int added = -1;
  for (int w = 0; w < cur.word_count(); ++w) {
    const std::uint64_t a = prev.word(w);
    const std::uint64_t b = cur.word(w);
    if ((a & ~b) != 0) return -1;
    const std::uint64_t extra = b & ~a;
    if (extra == 0) continue;
    if (added >= 0 || std::popcount(extra) != 1) return -1;
    added = 64 * w + std::countr_zero(extra);
  }
  return added;
}

void CheckSamples(int n, std::span<const UtilitySample> samples) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "n must be >= 1");
  for (const UtilitySample& s : samples) {
    Require(s.coalition.n() == n, ErrorCode::kInvalidArgument, "sample over the wrong ground set");
  }
}

// First true_eval value for `target`, else the first predicted one.
std::optional<double> Anchor(std::span<const UtilitySample> samples, const Coalition& target) {
  std::optional<double> predicted;
  for (const UtilitySample& s : samples) {
    if (!(s.coalition == target)) continue;
    if (s.provenance == Provenance::kTrueEval) return s.value;
    if (!predicted) predicted = s.value;
  }
  return predicted;
}

std::vector<UtilitySample> PermutationSample(const UtilityOracle& oracle, std::uint64_t budget,
                                             SeededRng& rng) {
  const int n = oracle.n();
  Require(budget >= static_cast<std::uint64_t>(n) + 1, ErrorCode::kBudgetTooSmall,
          "permutation sampling needs budget >= n + 1 = " + std::to_string(n + 1));
  std::vector<UtilitySample> out;
  out.reserve(budget);
  while (out.size() < budget) {
    const std::vector<int> perm = rng.Permutation(n);
    Coalition c(n);
    out.push_back({c, oracle.Evaluate(c), Provenance::kTrueEval});
    for (int p : perm) {
      if (out.size() >= budget) break;
      c.insert(p);
      out.push_back({c, oracle.Evaluate(c), Provenance::kTrueEval});
    }
  }
  return out;
}

ValueVector PermutationEstimate(int n, std::span<const UtilitySample> samples) {
  CheckSamples(n, samples);
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> walk(static_cast<std::size_t>(n));
  std::uint64_t walks = 0;
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  std::size_t i = 0;
  while (i < samples.size()) {
    if (!samples[i].coalition.empty()) {
      ++i;
      continue;
    }
    std::size_t t = 1;
    for (; t < len && i + t < samples.size(); ++t) {
      const int p = AddedPlayer(samples[i + t - 1].coalition, samples[i + t].coalition);
      if (p < 0) break;
      walk[p] = samples[i + t].value - samples[i + t - 1].value;
    }
    if (t == len) {
      for (int p = 0; p < n; ++p) sum[p] += walk[p];
      ++walks;
      i += len;
    } else {
      i += t;
    }
  }
  Require(walks >= 1, ErrorCode::kIncompleteSamples, "no complete permutation walk in samples");
  ValueVector out;
  out.method = "permutation";
  out.values.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) out.values[p] = sum[p] / static_cast<double>(walks);
  return out;
}

std::vector<UtilitySample> GroupTestingSample(const UtilityOracle& oracle, std::uint64_t budget,
                                              SeededRng& rng) {
  const int n = oracle.n();
  Require(budget >= std::max<std::uint64_t>(2, static_cast<std::uint64_t>(n)),
          ErrorCode::kBudgetTooSmall, "group testing needs budget >= max(n, 2)");
  std::vector<UtilitySample> out;
  out.reserve(budget);
  const Coalition full = Coalition::Full(n);
  const Coalition none(n);
  out.push_back({full, oracle.Evaluate(full), Provenance::kTrueEval});
  out.push_back({none, oracle.Evaluate(none), Provenance::kTrueEval});
  if (n == 1) return out;
  std::vector<double> cdf(static_cast<std::size_t>(n - 1));
  double total = 0.0;
  for (int k = 1; k < n; ++k) {
    total += 1.0 / k + 1.0 / (n - k);
    cdf[k - 1] = total;
  }
  while (out.size() < budget) {
    const double u = rng.Uniform() * total;
    const int k = 1 + static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    std::vector<int> perm = rng.Permutation(n);
    Coalition c(n);
    for (int t = 0; t < std::min(k, n - 1); ++t) c.insert(perm[t]);
    out.push_back({c, oracle.Evaluate(c), Provenance::kTrueEval});
  }
  return out;
}

ValueVector GroupTestingEstimate(int n, std::span<const UtilitySample> samples,
                                 const GroupTestingConfig& cfg) {
  CheckSamples(n, samples);
  const std::optional<double> grand = Anchor(samples, Coalition::Full(n));
  const std::optional<double> empty = Anchor(samples, Coalition(n));
  Require(grand && empty, ErrorCode::kIncompleteSamples,
          "group testing needs U(D) and U(empty) among the samples");
  const double total = *grand - *empty;
  ValueVector out;
  out.method = "group_testing";
  if (n == 1) {
    out.values = {total};
    return out;
  }
  double z = 0.0;
  for (int k = 1; k < n; ++k) z += 1.0 / k;
  z *= 2.0;
  // A_i = sum over tests containing i of U(S_t).
  std::vector<double> a(static_cast<std::size_t>(n), 0.0);
  std::uint64_t tests = 0;
  for (const UtilitySample& s : samples) {
    const int size = s.coalition.size();
    if (size == 0 || size == n) continue;
    ++tests;
    for (int p : s.coalition.members()) a[p] += s.value;
  }
  const double c = tests > 0 ? z / static_cast<double>(tests) : 0.0;

  if (!cfg.solve_lp) {
    const double sum_a = std::accumulate(a.begin(), a.end(), 0.0);
    const double shift = (total - c * sum_a) / n;
    out.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.values[i] = c * a[i] + shift;
    return out;
  }

  // min s  s.t.  x_i - x_j - s <= dU_ij,  -(x_i - x_j) - s <= -dU_ij,  sum x = total.
  LinearProgram lp(n + 1);
  for (int i = 0; i < n; ++i) lp.SetFree(i);
  lp.objective[n] = 1.0;
  std::vector<double> row(static_cast<std::size_t>(n + 1), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double du = c * (a[i] - a[j]);
      std::fill(row.begin(), row.end(), 0.0);
      row[i] = 1.0;
      row[j] = -1.0;
      row[n] = -1.0;
      lp.AddInequality(row, du);
      row[i] = -1.0;
      row[j] = 1.0;
      lp.AddInequality(row, -du);
    }
  }
  std::fill(row.begin(), row.end(), 1.0);
  row[n] = 0.0;
  lp.AddEquality(row, total);
  const LpSolution sol = SolveLp(lp);
  Require(sol.status == LpStatus::kOptimal, ErrorCode::kInfeasible,
          "group-testing LP ended " + std::string(LpStatusName(sol.status)));
  out.values.assign(sol.x.begin(), sol.x.begin() + n);
  if (sol.x[n] > cfg.epsilon / (2.0 * std::sqrt(static_cast<double>(n)))) {
    out.warnings.push_back("difference constraints need slack " + std::to_string(sol.x[n]));
  }
  return out;
}

std::vector<UtilitySample> MonteCarloLeastCoreSample(const UtilityOracle& oracle,
                                                     std::uint64_t budget, SeededRng& rng) {
  const int n = oracle.n();
  Require(budget >= 1, ErrorCode::kBudgetTooSmall, "Monte-Carlo least core needs budget >= 1");
  std::vector<UtilitySample> out;
  out.reserve(budget);
  const Coalition full = Coalition::Full(n);
  out.push_back({full, oracle.Evaluate(full), Provenance::kTrueEval});
  while (out.size() < budget) {
    const Coalition c = SampleUniformCoalition(rng, n);
    out.push_back({c, oracle.Evaluate(c), Provenance::kTrueEval});
  }
  return out;
}

ValueVector MonteCarloLeastCoreEstimate(int n, std::span<const UtilitySample> samples) {
  CheckSamples(n, samples);
  const std::optional<double> grand = Anchor(samples, Coalition::Full(n));
  Require(grand.has_value(), ErrorCode::kIncompleteSamples,
          "Monte-Carlo least core needs U(D) among the samples");
  // True evaluations first, so a coalition seen both ways keeps its true value.
  std::vector<CoalitionValue> cons;
  cons.reserve(samples.size());
  for (const UtilitySample& s : samples) {
    if (s.provenance == Provenance::kTrueEval) cons.push_back({s.coalition, s.value});
  }
  for (const UtilitySample& s : samples) {
    if (s.provenance != Provenance::kTrueEval) cons.push_back({s.coalition, s.value});
  }
  ValueVector out = LeastCoreFromConstraints(n, cons, *grand);
  out.method = "mc_least_core";
  return out;
}

std::vector<UtilitySample> ExactFormulaSample(const UtilityOracle& oracle, std::uint64_t budget,
                                              SeededRng& rng) {
  const int n = oracle.n();
  Require(n <= kMaxExactShapleyPlayers, ErrorCode::kEnumerationTooLarge,
          "exact-formula sampling limited to n <= " + std::to_string(kMaxExactShapleyPlayers));
  std::vector<std::uint64_t> order(std::size_t{1} << n);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  rng.Shuffle(std::span<std::uint64_t>(order));
  const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(budget, order.size()));
  std::vector<UtilitySample> out;
  out.reserve(take);
  for (std::size_t t = 0; t < take; ++t) {
    const Coalition c = Coalition::FromMask(n, order[t]);
    out.push_back({c, oracle.Evaluate(c), Provenance::kTrueEval});
  }
  return out;
}

ValueVector ExactFormulaEstimate(int n, std::span<const UtilitySample> samples) {
  CheckSamples(n, samples);
  Require(n <= kMaxExactShapleyPlayers, ErrorCode::kEnumerationTooLarge,
          "exact formula limited to n <= " + std::to_string(kMaxExactShapleyPlayers));
  std::vector<double> table(std::size_t{1} << n, 0.0);
  std::vector<char> have(table.size(), 0);
  for (int pass = 0; pass < 2; ++pass) {
    const Provenance want = pass == 0 ? Provenance::kTrueEval : Provenance::kPredicted;
    for (const UtilitySample& s : samples) {
      if (s.provenance != want) continue;
      const std::uint64_t x = s.coalition.mask();
      if (have[x]) continue;
      have[x] = 1;
      table[x] = s.value;
    }
  }
  const auto missing = std::count(have.begin(), have.end(), 0);
  Require(missing == 0, ErrorCode::kIncompleteSamples,
          std::to_string(missing) + " coalitions missing for the exact formula");
  ValueVector out;
  out.method = "exact_formula";
  out.values = ShapleyFromTable(table, n);
  return out;
}

}  // namespace

HeuristicPair PermutationPair() { return {"permutation", PermutationSample, PermutationEstimate}; }

HeuristicPair GroupTestingPair(GroupTestingConfig cfg) {
  return {"group_testing", GroupTestingSample,
          [cfg](int n, std::span<const UtilitySample> s) { return GroupTestingEstimate(n, s, cfg); }};
}

HeuristicPair MonteCarloLeastCorePair() {
  return {"mc_least_core", MonteCarloLeastCoreSample, MonteCarloLeastCoreEstimate};
}

HeuristicPair ExactFormulaPair() { return {"exact_formula", ExactFormulaSample, ExactFormulaEstimate}; }

std::pair<ValueVector, std::vector<UtilitySample>> RunHeuristicWithSamples(
    const HeuristicPair& pair, const UtilityOracle& oracle, std::uint64_t budget,
    const SeededRng& rng) {
  const std::uint64_t before = oracle.eval_count();
  SeededRng sampler_rng = rng.Child("sampler");
  std::vector<UtilitySample> samples = pair.sample(oracle, budget, sampler_rng);
  const std::uint64_t used = oracle.eval_count() - before;
  ValueVector out = pair.estimate(oracle.n(), samples);
  out.method = pair.name;
  out.budget_used = used;
  out.seed = rng.seed();
  return {std::move(out), std::move(samples)};
}

ValueVector RunHeuristic(const HeuristicPair& pair, const UtilityOracle& oracle,
                         std::uint64_t budget, const SeededRng& rng) {
  return RunHeuristicWithSamples(pair, oracle, budget, rng).first;
}

ValueVector PermutationSampling(const UtilityOracle& oracle, std::uint64_t budget,
                                const SeededRng& rng) {
  return RunHeuristic(PermutationPair(), oracle, budget, rng);
}

ValueVector GroupTestingShapley(const UtilityOracle& oracle, std::uint64_t budget,
                                const SeededRng& rng, double epsilon) {
  return RunHeuristic(GroupTestingPair({epsilon, false}), oracle, budget, rng);
}

ValueVector MonteCarloLeastCore(const UtilityOracle& oracle, std::uint64_t budget,
                                const SeededRng& rng) {
  return RunHeuristic(MonteCarloLeastCorePair(), oracle, budget, rng);
}

ModelOracle::ModelOracle(std::shared_ptr<const UtilityModel> model)
    : CountingOracle(model->n(), Bounds{-kInf, kInf}), model_(std::move(model)) {}

double ModelOracle::Compute(const Coalition& coalition) const { return model_->Predict(coalition); }

Learner ModelLearner(std::function<UtilityModel(std::span<const UtilitySample>, std::uint64_t)> fit) {
  return [fit = std::move(fit)](int, std::span<const UtilitySample> train,
                                SeededRng& rng) -> std::shared_ptr<const UtilityOracle> {
    auto model = std::make_shared<const UtilityModel>(fit(train, rng.NextU64()));
    return std::make_shared<ModelOracle>(std::move(model));
  };
}

Learner PerfectLearner(std::shared_ptr<const UtilityOracle> oracle) {
  return [oracle = std::move(oracle)](int, std::span<const UtilitySample>, SeededRng&) {
    return oracle;
  };
}

DulResult DulBoostWithSamples(const HeuristicPair& pair, const UtilityOracle& oracle,
                              std::uint64_t m_train, std::uint64_t m_eval, const Learner& learner,
                              const SeededRng& rng) {
  Require(m_train >= 1, ErrorCode::kBudgetTooSmall, "DUL needs m_train >= 1");
  const int n = oracle.n();
  DulResult out;
  const std::uint64_t before = oracle.eval_count();
  SeededRng sampler_rng = rng.Child("sampler");
  out.train = pair.sample(oracle, m_train, sampler_rng);
  const std::uint64_t used = oracle.eval_count() - before;

  if (m_eval == 0) {
    out.values = pair.estimate(n, out.train);
  } else {
    SeededRng learner_rng = rng.Child("learner");
    const std::shared_ptr<const UtilityOracle> model = learner(n, out.train, learner_rng);
    Require(model != nullptr && model->n() == n, ErrorCode::kInvalidArgument,
            "learner returned a model over the wrong ground set");
    SeededRng predicted_rng = rng.Child("predicted");
    out.predicted = pair.sample(*model, m_eval, predicted_rng);
    for (UtilitySample& s : out.predicted) s.provenance = Provenance::kPredicted;
    std::vector<UtilitySample> all;
    all.reserve(out.train.size() + out.predicted.size());
    all.insert(all.end(), out.train.begin(), out.train.end());
    all.insert(all.end(), out.predicted.begin(), out.predicted.end());
    out.values = pair.estimate(n, all);
  }
  out.values.method = "dul_" + pair.name;
  out.values.budget_used = used;
  out.values.seed = rng.seed();
  return out;
}

ValueVector DulBoost(const HeuristicPair& pair, const UtilityOracle& oracle, std::uint64_t m_train,
                     std::uint64_t m_eval, const Learner& learner, const SeededRng& rng) {
  return DulBoostWithSamples(pair, oracle, m_train, m_eval, learner, rng).values;
}

}  // namespace valgame
