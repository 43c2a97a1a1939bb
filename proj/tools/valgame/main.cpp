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


#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "config.hpp"
#include "experiments.hpp"
#include "valgame/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;

int ExitCodeFor(valgame::ErrorCode code) {
  switch (code) {
    case valgame::ErrorCode::kConfig:
      return kExitConfig;
    case valgame::ErrorCode::kGuard:
    case valgame::ErrorCode::kEnumerationTooLarge:
      return kExitGuard;
    default:
      return kExitOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using valgame::cli::Command;

  CLI::App app{"Data valuation experiments: diagnostics, exact values, error simulation and removal curves."};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::optional<int> jobs;

  std::map<CLI::App*, Command> commands;
  const auto add = [&](Command c, const std::string& help) {
    CLI::App* sub = app.add_subcommand(std::string(valgame::cli::CommandName(c)), help);
    sub->add_option("--config", config_path, "YAML experiment config")->required();
    sub->add_option("--seed", seed, "Base seed; repetition r uses seed + r");
    sub->add_option("--out", out_path, "Output file (default: config 'output', else stdout)");
    sub->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    commands[sub] = c;
  };
  add(Command::kDiagnose, "Relaxed-submodularity rates by beta (CSV)");
  add(Command::kExact, "Exact Shapley and least core (JSON)");
  add(Command::kSimulateError, "Estimation error against exact values (CSV)");
  add(Command::kRemoval, "Remove top or bottom valued points and re-evaluate (CSV)");
  add(Command::kGroupRemoval, "Removal curves over Dirichlet groups (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  Command command = Command::kDiagnose;
  for (const auto& [sub, c] : commands) {
    if (sub->parsed()) command = c;
  }

  try {
    valgame::cli::ExperimentConfig cfg = valgame::cli::LoadConfig(config_path, command);
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    if (!out_path.empty()) cfg.output = out_path;

    if (cfg.output.empty() || cfg.output == "-") {
      valgame::cli::RunCommand(cfg, std::cout);
    } else {
      // Write to a buffer first so a failed run leaves no partial file.
      std::ostringstream buffer;
      valgame::cli::RunCommand(cfg, buffer);
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot write " << cfg.output << '\n';
        return kExitOther;
      }
      file << buffer.str();
    }
  } catch (const valgame::Error& e) {
    std::cerr << "error [" << valgame::ErrorCodeName(e.code()) << "]: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOk;
}
