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


#ifndef VALGAME_TOOLS_CONFIG_HPP_
#define VALGAME_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valgame/learners.hpp"
#include "valgame/logistic.hpp"
#include "valgame/valuation.hpp"

namespace valgame::cli {

enum class Command { kDiagnose, kExact, kSimulateError, kRemoval, kGroupRemoval };

std::string_view CommandName(Command c);
std::optional<Command> ParseCommand(std::string_view name);

struct GameSpec {
  // synthetic-small | synthetic-large | csv | modular | coverage | majority |
  // unanimity | groups
  std::string kind;
  std::uint64_t seed = 0;  // data / partition seed

  // Analytic games.
  int n = 0;
  std::vector<double> weights;               // modular
  int quota = 0;                             // majority
  std::vector<int> carrier;                  // unanimity
  std::vector<std::vector<int>> cover_sets;  // coverage
  int universe = 0;
  double normalizer = 1.0;

  // Dataset games.
  std::string path;
  std::string label_column;
  double test_fraction = 0.3;
  Metric metric = Metric::kAccuracy;
  LogisticHyperparams logistic;

  // groups: players are Dirichlet groups over a dataset game of kind `base`.
  std::string base = "synthetic-large";
  int group_count = 20;
  double alpha = 30.0;
};

struct LearnerSpec {
  std::string kind = "mlp";  // mlp | poly | perfect
  MlpConfig mlp;
  int degree = 2;  // poly
};

struct RemovalSpec {
  double step = 0.05;
  double max_fraction = 0.5;
  std::vector<std::string> directions{"remove_best", "remove_worst"};

  std::vector<double> Grid() const;
};

struct ExperimentConfig {
  Command command = Command::kDiagnose;
  std::uint64_t seed = 0;  // repetition r uses seed + r
  GameSpec game;

  // diagnose
  std::vector<double> betas;  // added to 0, 0.98, 0.99
  int trials = 2000;

  // exact has no extra fields; the others share these.
  std::vector<std::string> methods;
  std::vector<std::uint64_t> m_train;
  double m_eval_multiplier = 10.0;
  std::optional<std::uint64_t> m_eval;  // overrides the multiplier
  int repetitions = 10;
  LearnerSpec learner;
  CgaConfig cga;
  GroupTestingConfig group_testing;
  RemovalSpec removal;

  int jobs = 0;  // 0 = hardware concurrency
  std::string output;

  std::uint64_t MEval(std::uint64_t m_train) const;
  // 0, 0.98, 0.99 followed by any extra betas not already listed.
  std::vector<double> DiagnoseBetas() const;
  // Canonical YAML of every resolved field.
  std::string ToYaml() const;
};

// Defaults depend on the command. Errors carry ErrorCode::kConfig and a
// "line N:" prefix when the position is known.
ExperimentConfig DefaultConfig(Command command);
ExperimentConfig ParseConfig(std::string_view yaml, Command command);
ExperimentConfig LoadConfig(const std::filesystem::path& path, Command command);

// Method names accepted by each command.
std::vector<std::string> KnownMethods(Command command);

}  // namespace valgame::cli

#endif  // VALGAME_TOOLS_CONFIG_HPP_
