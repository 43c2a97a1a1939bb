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


#ifndef VALGAME_TOOLS_EXPERIMENTS_HPP_
#define VALGAME_TOOLS_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "valgame/games.hpp"
#include "valgame/oracle.hpp"
#include "valgame/valuation.hpp"

namespace valgame::cli {

struct Game {
  std::shared_ptr<const UtilityOracle> oracle;  // safe for concurrent Evaluate
  std::optional<GroupPartition> partition;
};

Game BuildGame(const GameSpec& spec);

// "shapley" or "least_core".
std::string ConceptOf(const std::string& method);

// Runs one registered method. `truth` backs the perfect learner.
ValueVector EstimateValues(const std::string& method, const ExperimentConfig& cfg,
                           const UtilityOracle& oracle,
                           const std::shared_ptr<const UtilityOracle>& truth,
                           std::uint64_t m_train, const SeededRng& rng);

struct DiagnoseRow {
  double beta = 0.0;
  double rate = 0.0;
  int trials = 0;
  int satisfied = 0;
  std::uint64_t seed = 0;
};

struct DiagnoseResult {
  std::vector<DiagnoseRow> rows;
  std::optional<double> beta_star;  // exact, reported when n <= 12
  bool beta_star_finite = false;
};

DiagnoseResult RunDiagnose(const ExperimentConfig& cfg);

struct ErrorRow {
  std::string method;
  std::string solution;
  std::uint64_t m_train = 0;
  int rep = 0;
  ErrorNorms errors;
  std::uint64_t budget_used = 0;
  std::optional<std::uint64_t> seed;
};

// Sorted by method, solution, m_train, rep. Includes the two exact rows.
std::vector<ErrorRow> RunErrorSimulation(const ExperimentConfig& cfg);

struct RemovalRow {
  std::string method;
  std::string direction;
  std::uint64_t m_train = 0;
  int rep = 0;
  double fraction = 0.0;
  int removed = 0;
  double utility = 0.0;
};

struct RemovalResult {
  std::vector<RemovalRow> rows;  // sorted by method, direction, m_train, rep, fraction
  double full_utility = 0.0;
  std::optional<GroupPartition> partition;
};

// Players ranked by estimated value, ties to the lower index.
RemovalResult RunRemoval(const ExperimentConfig& cfg);

struct ExactResult {
  ValueVector shapley;
  ValueVector least_core;
};

ExactResult RunExact(const ExperimentConfig& cfg);

// Writers embed the resolved config as leading '#' lines (CSV) or a "config"
// field (JSON).
void WriteDiagnoseCsv(std::ostream& out, const ExperimentConfig& cfg, const DiagnoseResult& r);
void WriteErrorCsv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<ErrorRow>& rows);
void WriteRemovalCsv(std::ostream& out, const ExperimentConfig& cfg, const RemovalResult& r);
void WriteExactJson(std::ostream& out, const ExperimentConfig& cfg, const ExactResult& r);

// Runs the configured command and writes its output.
void RunCommand(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace valgame::cli

#endif  // VALGAME_TOOLS_EXPERIMENTS_HPP_
