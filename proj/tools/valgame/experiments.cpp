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


#include "experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "valgame/dataset.hpp"
#include "valgame/diagnostics.hpp"
#include "valgame/error.hpp"
#include "valgame/learners.hpp"
#include "valgame/samples.hpp"

namespace valgame::cli {
namespace {

constexpr std::string_view kDulPrefix = "dul_";

void ParallelFor(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  // The lowest failing task wins so the reported error does not depend on timing.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::shared_ptr<const Dataset> LoadData(const GameSpec& g, const std::string& kind) {
  if (kind == "synthetic-small") return std::make_shared<const Dataset>(MakeSyntheticSmall(g.seed));
  if (kind == "synthetic-large") return std::make_shared<const Dataset>(MakeSyntheticLarge(g.seed));
  return std::make_shared<const Dataset>(LoadCsvDataset(g.path, g.label_column, g.test_fraction, g.seed));
}

HeuristicPair PairFor(std::string_view name, const ExperimentConfig& cfg) {
  if (name == "permutation") return PermutationPair();
  if (name == "group_testing") return GroupTestingPair(cfg.group_testing);
  if (name == "mc_least_core") return MonteCarloLeastCorePair();
  if (name == "exact_formula") return ExactFormulaPair();
  Fail(ErrorCode::kConfig, "unknown method '" + std::string(name) + "'");
}

Learner MakeLearner(const LearnerSpec& spec, const std::shared_ptr<const UtilityOracle>& truth) {
  if (spec.kind == "perfect") return PerfectLearner(truth);
  if (spec.kind == "poly") {
    const int degree = spec.degree;
    return ModelLearner([degree](std::span<const UtilitySample> s, std::uint64_t) {
      Require(!s.empty(), ErrorCode::kInvalidArgument, "no training samples");
      std::vector<int> vars(static_cast<std::size_t>(s.front().coalition.n()));
      std::iota(vars.begin(), vars.end(), 0);
      return PacPolyLearn(s, degree, vars).model;
    });
  }
  const MlpConfig base = spec.mlp;
  return ModelLearner([base](std::span<const UtilitySample> s, std::uint64_t seed) {
    MlpConfig c = base;
    c.seed = seed;
    return MlpLearn(s, c);
  });
}

std::vector<std::string> CommentLines(const ExperimentConfig& cfg) {
  std::vector<std::string> out{"valgame " + std::string(CommandName(cfg.command))};
  std::istringstream yaml(cfg.ToYaml());
  for (std::string line; std::getline(yaml, line);) out.push_back(line);
  return out;
}

void WriteComments(std::ostream& out, const std::vector<std::string>& lines) {
  for (const std::string& line : lines) out << "# " << line << '\n';
}

}  // namespace

Game BuildGame(const GameSpec& g) {
  Game out;
  if (g.kind == "modular") {
    out.oracle = ModularOracle(g.weights);
  } else if (g.kind == "majority") {
    out.oracle = MajorityOracle(g.n, g.quota);
  } else if (g.kind == "unanimity") {
    out.oracle = UnanimityOracle(Coalition::FromMembers(g.n, g.carrier));
  } else if (g.kind == "coverage") {
    out.oracle = CoverageOracle(g.cover_sets, g.universe, g.normalizer);
  } else if (g.kind == "groups") {
    auto [game, partition] = DirichletGroupOracle(LoadData(g, g.base), g.group_count, g.alpha,
                                                  g.seed, g.logistic, g.metric);
    out.oracle = std::move(game);
    out.partition = std::move(partition);
  } else if (g.kind == "synthetic-small" || g.kind == "synthetic-large" || g.kind == "csv") {
    out.oracle = std::make_shared<LogisticGame>(LoadData(g, g.kind), g.logistic, g.metric);
  } else {
    Fail(ErrorCode::kConfig, "unknown game kind '" + g.kind + "'");
  }
  return out;
}

std::string ConceptOf(const std::string& method) {
  return method.find("least_core") != std::string::npos ? "least_core" : "shapley";
}

ValueVector EstimateValues(const std::string& method, const ExperimentConfig& cfg,
                           const UtilityOracle& oracle,
                           const std::shared_ptr<const UtilityOracle>& truth,
                           std::uint64_t m_train, const SeededRng& rng) {
  if (method == "random") {
    SeededRng r = rng.Child("random");
    ValueVector v;
    v.method = method;
    v.values.resize(static_cast<std::size_t>(oracle.n()));
    for (double& x : v.values) x = r.Uniform();
    v.seed = rng.seed();
    return v;
  }
  if (method == "exact_shapley") return ExactShapley(oracle);
  if (method == "exact_least_core") return ExactLeastCore(oracle);
  if (method == "cga") {
    // Trained on uniform coalitions plus the grand coalition.
    const std::uint64_t before = oracle.eval_count();
    SeededRng sampler = rng.Child("sampler");
    const std::vector<UtilitySample> train = MonteCarloLeastCorePair().sample(oracle, m_train, sampler);
    CgaConfig c = cfg.cga;
    c.seed = rng.Child("learner").NextU64();
    ValueVector v;
    v.method = method;
    v.values = CgaShapley(CgaLearn(train, c));
    v.budget_used = oracle.eval_count() - before;
    v.seed = rng.seed();
    return v;
  }
  if (method.starts_with(kDulPrefix)) {
    const HeuristicPair pair = PairFor(std::string_view(method).substr(kDulPrefix.size()), cfg);
    return DulBoost(pair, oracle, m_train, cfg.MEval(m_train), MakeLearner(cfg.learner, truth), rng);
  }
  return RunHeuristic(PairFor(method, cfg), oracle, m_train, rng);
}

DiagnoseResult RunDiagnose(const ExperimentConfig& cfg) {
  const Game game = BuildGame(cfg.game);
  const auto cached = Memoize(game.oracle);
  const std::vector<double> betas = cfg.DiagnoseBetas();
  SeededRng rng(cfg.seed);
  DiagnoseResult out;
  for (const RelaxedSubmodReport& r : CheckRelaxedSubmodularity(*cached, betas, cfg.trials, rng)) {
    out.rows.push_back({r.beta, r.rate, r.trials, r.satisfied, cfg.seed});
  }
  if (cached->n() <= 12) {
    const std::vector<double> table = FullTable(*cached);
    out.beta_star = MinBetaExact(table, cached->n());
    out.beta_star_finite = out.beta_star.has_value();
  }
  return out;
}

std::vector<ErrorRow> RunErrorSimulation(const ExperimentConfig& cfg) {
  const Game game = BuildGame(cfg.game);
  const int n = game.oracle->n();
  Require(n <= kMaxExactLeastCorePlayers, ErrorCode::kEnumerationTooLarge,
          "simulate-error needs exact values; n = " + std::to_string(n) + " exceeds " +
              std::to_string(kMaxExactLeastCorePlayers));
  const std::vector<double> table = FullTable(*game.oracle);
  const Bounds bounds = game.oracle->bounds();
  const auto truth = std::make_shared<const TableOracle>(n, table, bounds);
  const std::vector<double> shapley = ShapleyFromTable(table, n);
  const std::vector<double> least_core = LeastCoreFromTable(table, n).values;

  struct Task {
    std::string method;
    std::uint64_t m_train;
    int rep;
  };
  std::vector<Task> tasks;
  for (const std::string& m : cfg.methods) {
    for (std::uint64_t b : cfg.m_train) {
      for (int r = 0; r < cfg.repetitions; ++r) tasks.push_back({m, b, r});
    }
  }
  std::vector<ErrorRow> rows(tasks.size());
  ParallelFor(tasks.size(), cfg.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    // Each task counts its own evaluations.
    const TableOracle oracle(n, table, bounds);
    const SeededRng rng(cfg.seed + static_cast<std::uint64_t>(t.rep));
    const ValueVector v = EstimateValues(t.method, cfg, oracle, truth, t.m_train, rng);
    const std::string solution = ConceptOf(t.method);
    rows[i] = {t.method, solution, t.m_train, t.rep,
               CompareValues(v.values, solution == "shapley" ? shapley : least_core), v.budget_used,
               v.seed};
  });
  const std::uint64_t full = std::uint64_t{1} << n;
  rows.push_back({"exact", "least_core", 0, 0, {}, full, std::nullopt});
  rows.push_back({"exact", "shapley", 0, 0, {}, full, std::nullopt});
  std::stable_sort(rows.begin(), rows.end(), [](const ErrorRow& a, const ErrorRow& b) {
    return std::tie(a.method, a.solution, a.m_train, a.rep) <
           std::tie(b.method, b.solution, b.m_train, b.rep);
  });
  return rows;
}

RemovalResult RunRemoval(const ExperimentConfig& cfg) {
  const Game game = BuildGame(cfg.game);
  const int n = game.oracle->n();
  // Shared cache for re-evaluating remainders; estimation runs get their own.
  const auto truth = Memoize(game.oracle);
  const std::vector<double> grid = cfg.removal.Grid();

  struct Task {
    std::string method;
    std::uint64_t m_train;
    int rep;
  };
  std::vector<Task> tasks;
  for (const std::string& m : cfg.methods) {
    for (std::uint64_t b : cfg.m_train) {
      for (int r = 0; r < cfg.repetitions; ++r) tasks.push_back({m, b, r});
    }
  }
  std::vector<std::vector<RemovalRow>> per_task(tasks.size());
  ParallelFor(tasks.size(), cfg.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    const MemoizedOracle local(game.oracle);
    const SeededRng rng(cfg.seed + static_cast<std::uint64_t>(t.rep));
    const ValueVector v = EstimateValues(t.method, cfg, local, truth, t.m_train, rng);
    for (const std::string& direction : cfg.removal.directions) {
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      const bool best = direction == "remove_best";
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return best ? v.values[a] > v.values[b] : v.values[a] < v.values[b];
      });
      for (double f : grid) {
        const int k = static_cast<int>(std::llround(f * n));
        Coalition keep = Coalition::Full(n);
        for (int j = 0; j < k; ++j) keep.erase(order[static_cast<std::size_t>(j)]);
        per_task[i].push_back({t.method, direction, t.m_train, t.rep, f, k, truth->Evaluate(keep)});
      }
    }
  });
  RemovalResult out;
  for (auto& rows : per_task) {
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  }
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const RemovalRow& a, const RemovalRow& b) {
    return std::tie(a.method, a.direction, a.m_train, a.rep, a.fraction) <
           std::tie(b.method, b.direction, b.m_train, b.rep, b.fraction);
  });
  out.full_utility = truth->Evaluate(Coalition::Full(n));
  out.partition = game.partition;
  return out;
}

ExactResult RunExact(const ExperimentConfig& cfg) {
  const Game game = BuildGame(cfg.game);
  const int n = game.oracle->n();
  Require(n <= kMaxExactLeastCorePlayers, ErrorCode::kEnumerationTooLarge,
          "exact values limited to n <= " + std::to_string(kMaxExactLeastCorePlayers));
  const std::vector<double> table = FullTable(*game.oracle);
  ExactResult out;
  out.shapley.method = "exact_shapley";
  out.shapley.values = ShapleyFromTable(table, n);
  out.shapley.budget_used = table.size();
  out.least_core = LeastCoreFromTable(table, n);
  out.least_core.budget_used = table.size();
  return out;
}

void WriteDiagnoseCsv(std::ostream& out, const ExperimentConfig& cfg, const DiagnoseResult& r) {
  std::vector<std::string> comments = CommentLines(cfg);
  if (r.beta_star) comments.push_back("beta_star: " + FormatDouble(*r.beta_star));
  WriteComments(out, comments);
  out << "beta,rate,trials,satisfied,seed\n";
  for (const DiagnoseRow& row : r.rows) {
    out << FormatDouble(row.beta) << ',' << FormatDouble(row.rate) << ',' << row.trials << ','
        << row.satisfied << ',' << row.seed << '\n';
  }
}

void WriteErrorCsv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ErrorRow>& rows) {
  WriteComments(out, CommentLines(cfg));
  out << "method,concept,m_train,rep,l1,l2,linf,budget_used,seed\n";
  for (const ErrorRow& row : rows) {
    out << row.method << ',' << row.solution << ',' << row.m_train << ',' << row.rep << ','
        << FormatDouble(row.errors.l1) << ',' << FormatDouble(row.errors.l2) << ','
        << FormatDouble(row.errors.linf) << ',' << row.budget_used << ',';
    if (row.seed) out << *row.seed;
    out << '\n';
  }
}

void WriteRemovalCsv(std::ostream& out, const ExperimentConfig& cfg, const RemovalResult& r) {
  std::vector<std::string> comments = CommentLines(cfg);
  comments.push_back("tie_break: lower player index removed first");
  comments.push_back("full_utility: " + FormatDouble(r.full_utility));
  if (r.partition) {
    std::string sizes;
    for (const auto& members : r.partition->Members()) {
      sizes += (sizes.empty() ? "" : " ") + std::to_string(members.size());
    }
    comments.push_back("group_sizes: " + sizes);
    comments.push_back("dirichlet_redraws: " + std::to_string(r.partition->redraws));
  }
  WriteComments(out, comments);
  out << "method,direction,m_train,rep,fraction_removed,removed,utility\n";
  for (const RemovalRow& row : r.rows) {
    out << row.method << ',' << row.direction << ',' << row.m_train << ',' << row.rep << ','
        << FormatDouble(row.fraction) << ',' << row.removed << ',' << FormatDouble(row.utility)
        << '\n';
  }
}

void WriteExactJson(std::ostream& out, const ExperimentConfig& cfg, const ExactResult& r) {
  nlohmann::ordered_json doc;
  doc["command"] = std::string(CommandName(cfg.command));
  doc["config"] = cfg.ToYaml();
  doc["shapley"] = nlohmann::ordered_json::parse(r.shapley.ToJson());
  doc["least_core"] = nlohmann::ordered_json::parse(r.least_core.ToJson());
  out << doc.dump(2) << '\n';
}

void RunCommand(const ExperimentConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::kDiagnose:
      WriteDiagnoseCsv(out, cfg, RunDiagnose(cfg));
      break;
    case Command::kExact:
      WriteExactJson(out, cfg, RunExact(cfg));
      break;
    case Command::kSimulateError:
      WriteErrorCsv(out, cfg, RunErrorSimulation(cfg));
      break;
    case Command::kRemoval:
    case Command::kGroupRemoval:
      WriteRemovalCsv(out, cfg, RunRemoval(cfg));
      break;
  }
}

}  // namespace valgame::cli
