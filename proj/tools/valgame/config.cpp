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


#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "valgame/error.hpp"

namespace valgame::cli {
namespace {

constexpr std::array<std::string_view, 8> kGameKinds{
    "synthetic-small", "synthetic-large", "csv", "modular", "coverage", "majority", "unanimity",
    "groups"};

[[noreturn]] void ConfigFail(const YAML::Mark& mark, const std::string& message) {
  if (mark.line >= 0) Fail(ErrorCode::kConfig, "line " + std::to_string(mark.line + 1) + ": " + message);
  Fail(ErrorCode::kConfig, message);
}

[[noreturn]] void ConfigFail(const YAML::Node& node, const std::string& message) {
  ConfigFail(node.Mark(), message);
}

void Check(bool ok, const YAML::Node& node, const std::string& message) {
  if (!ok) ConfigFail(node, message);
}

void CheckKeys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
               std::string_view where) {
  Check(map.IsMap(), map, std::string(where) + " must be a mapping");
  for (auto it = map.begin(); it != map.end(); ++it) {
    const std::string key = it->first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      ConfigFail(it->first, "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T Scalar(const YAML::Node& node, std::string_view key, std::string_view expected) {
  Check(node.IsScalar(), node, std::string(key) + ": expected " + std::string(expected));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    ConfigFail(node, std::string(key) + ": expected " + std::string(expected));
  }
}

double Real(const YAML::Node& node, std::string_view key) {
  const double v = Scalar<double>(node, key, "a number");
  Check(std::isfinite(v), node, std::string(key) + ": must be finite");
  return v;
}

std::int64_t Integer(const YAML::Node& node, std::string_view key) {
  return Scalar<std::int64_t>(node, key, "an integer");
}

int Positive(const YAML::Node& node, std::string_view key) {
  const std::int64_t v = Integer(node, key);
  Check(v >= 1 && v <= 1'000'000'000, node, std::string(key) + ": must be a positive integer");
  return static_cast<int>(v);
}

std::uint64_t NonNegative(const YAML::Node& node, std::string_view key) {
  const std::int64_t v = Integer(node, key);
  Check(v >= 0, node, std::string(key) + ": must be >= 0");
  return static_cast<std::uint64_t>(v);
}

std::string Text(const YAML::Node& node, std::string_view key) {
  return Scalar<std::string>(node, key, "a string");
}

bool Flag(const YAML::Node& node, std::string_view key) {
  return Scalar<bool>(node, key, "true or false");
}

template <typename F>
auto List(const YAML::Node& node, std::string_view key, F item) {
  Check(node.IsSequence(), node, std::string(key) + ": expected a list");
  std::vector<decltype(item(node))> out;
  for (const YAML::Node& child : node) out.push_back(item(child));
  return out;
}

void ParseLogistic(const YAML::Node& node, LogisticHyperparams& hp) {
  CheckKeys(node, {"learning_rate", "epochs", "l2_penalty"}, "game.logistic");
  if (node["learning_rate"]) hp.learning_rate = Real(node["learning_rate"], "learning_rate");
  if (node["epochs"]) hp.epochs = Positive(node["epochs"], "epochs");
  if (node["l2_penalty"]) hp.l2_penalty = Real(node["l2_penalty"], "l2_penalty");
  try {
    hp.Validate();
  } catch (const Error& e) {
    ConfigFail(node, std::string("game.logistic: ") + e.what());
  }
}

void ParseGame(const YAML::Node& node, GameSpec& g) {
  CheckKeys(node,
            {"kind", "seed", "n", "weights", "quota", "carrier", "cover_sets", "universe",
             "normalizer", "path", "label_column", "test_fraction", "metric", "logistic", "base",
             "group_count", "alpha"},
            "game");
  if (node["kind"]) {
    g.kind = Text(node["kind"], "game.kind");
    Check(std::find(kGameKinds.begin(), kGameKinds.end(), g.kind) != kGameKinds.end(), node["kind"],
          "game.kind: unknown game '" + g.kind + "'");
  }
  if (node["seed"]) g.seed = NonNegative(node["seed"], "game.seed");
  if (node["n"]) g.n = Positive(node["n"], "game.n");
  if (node["weights"]) {
    g.weights = List(node["weights"], "game.weights", [](const YAML::Node& c) { return Real(c, "game.weights"); });
  }
  if (node["quota"]) g.quota = static_cast<int>(NonNegative(node["quota"], "game.quota"));
  if (node["carrier"]) {
    g.carrier = List(node["carrier"], "game.carrier",
                     [](const YAML::Node& c) { return static_cast<int>(NonNegative(c, "game.carrier")); });
  }
  if (node["cover_sets"]) {
    g.cover_sets = List(node["cover_sets"], "game.cover_sets", [](const YAML::Node& set) {
      return List(set, "game.cover_sets", [](const YAML::Node& c) {
        return static_cast<int>(NonNegative(c, "game.cover_sets"));
      });
    });
  }
  if (node["universe"]) g.universe = Positive(node["universe"], "game.universe");
  if (node["normalizer"]) {
    g.normalizer = Real(node["normalizer"], "game.normalizer");
    Check(g.normalizer > 0.0, node["normalizer"], "game.normalizer: must be > 0");
  }
  if (node["path"]) g.path = Text(node["path"], "game.path");
  if (node["label_column"]) g.label_column = Text(node["label_column"], "game.label_column");
  if (node["test_fraction"]) {
    g.test_fraction = Real(node["test_fraction"], "game.test_fraction");
    Check(g.test_fraction > 0.0 && g.test_fraction < 1.0, node["test_fraction"],
          "game.test_fraction: must lie in (0, 1)");
  }
  if (node["metric"]) {
    const std::string m = Text(node["metric"], "game.metric");
    try {
      g.metric = ParseMetric(m);
    } catch (const Error&) {
      ConfigFail(node["metric"], "game.metric: expected accuracy or f1");
    }
  }
  if (node["logistic"]) ParseLogistic(node["logistic"], g.logistic);
  if (node["base"]) {
    g.base = Text(node["base"], "game.base");
    Check(g.base == "synthetic-small" || g.base == "synthetic-large" || g.base == "csv", node["base"],
          "game.base: expected synthetic-small, synthetic-large or csv");
  }
  if (node["group_count"]) g.group_count = Positive(node["group_count"], "game.group_count");
  if (node["alpha"]) {
    g.alpha = Real(node["alpha"], "game.alpha");
    Check(g.alpha > 0.0, node["alpha"], "game.alpha: must be > 0");
  }

  const bool dataset = g.kind == "csv" || (g.kind == "groups" && g.base == "csv");
  if (dataset) Check(!g.path.empty(), node, "game.path is required for csv data");
  if (dataset && g.label_column.empty()) g.label_column = "label";
  if (g.kind == "modular") Check(!g.weights.empty(), node, "game.weights is required for modular");
  if (g.kind == "majority") {
    Check(g.n >= 1, node, "game.n is required for majority");
    Check(g.quota <= g.n, node, "game.quota must be <= game.n");
  }
  if (g.kind == "unanimity") {
    Check(g.n >= 1, node, "game.n is required for unanimity");
    for (int p : g.carrier) Check(p < g.n, node["carrier"], "game.carrier: player out of range");
  }
  if (g.kind == "coverage") {
    Check(!g.cover_sets.empty(), node, "game.cover_sets is required for coverage");
    Check(g.universe >= 1, node, "game.universe is required for coverage");
    for (const auto& set : g.cover_sets) {
      for (int e : set) Check(e < g.universe, node["cover_sets"], "game.cover_sets: element out of range");
    }
  }
}

void ParseLearner(const YAML::Node& node, LearnerSpec& l) {
  CheckKeys(node,
            {"kind", "hidden_sizes", "leaky_slope", "dropout", "learning_rate", "batch_size",
             "epochs", "standardize_targets", "degree"},
            "learner");
  if (node["kind"]) {
    l.kind = Text(node["kind"], "learner.kind");
    Check(l.kind == "mlp" || l.kind == "poly" || l.kind == "perfect", node["kind"],
          "learner.kind: expected mlp, poly or perfect");
  }
  MlpConfig& m = l.mlp;
  if (node["hidden_sizes"]) {
    m.hidden_sizes = List(node["hidden_sizes"], "learner.hidden_sizes",
                          [](const YAML::Node& c) { return Positive(c, "learner.hidden_sizes"); });
  }
  if (node["leaky_slope"]) m.leaky_slope = Real(node["leaky_slope"], "learner.leaky_slope");
  if (node["dropout"]) m.dropout_rate = Real(node["dropout"], "learner.dropout");
  if (node["learning_rate"]) m.learning_rate = Real(node["learning_rate"], "learner.learning_rate");
  if (node["batch_size"]) m.batch_size = Positive(node["batch_size"], "learner.batch_size");
  if (node["epochs"]) m.max_epochs = Positive(node["epochs"], "learner.epochs");
  if (node["standardize_targets"]) {
    m.standardize_targets = Flag(node["standardize_targets"], "learner.standardize_targets");
  }
  if (node["degree"]) l.degree = static_cast<int>(NonNegative(node["degree"], "learner.degree"));
  try {
    m.Validate();
  } catch (const Error& e) {
    ConfigFail(node, std::string("learner: ") + e.what());
  }
}

void ParseCga(const YAML::Node& node, CgaConfig& c) {
  CheckKeys(node, {"learning_rate", "batch_size", "epochs"}, "cga");
  if (node["learning_rate"]) c.learning_rate = Real(node["learning_rate"], "cga.learning_rate");
  if (node["batch_size"]) c.batch_size = Positive(node["batch_size"], "cga.batch_size");
  if (node["epochs"]) c.epochs = Positive(node["epochs"], "cga.epochs");
  try {
    c.Validate();
  } catch (const Error& e) {
    ConfigFail(node, std::string("cga: ") + e.what());
  }
}

void ParseGroupTesting(const YAML::Node& node, GroupTestingConfig& c) {
  CheckKeys(node, {"epsilon", "solve_lp"}, "group_testing");
  if (node["epsilon"]) {
    c.epsilon = Real(node["epsilon"], "group_testing.epsilon");
    Check(c.epsilon > 0.0, node["epsilon"], "group_testing.epsilon: must be > 0");
  }
  if (node["solve_lp"]) c.solve_lp = Flag(node["solve_lp"], "group_testing.solve_lp");
}

void ParseRemoval(const YAML::Node& node, RemovalSpec& r) {
  CheckKeys(node, {"step", "max_fraction", "directions"}, "removal");
  if (node["step"]) r.step = Real(node["step"], "removal.step");
  if (node["max_fraction"]) r.max_fraction = Real(node["max_fraction"], "removal.max_fraction");
  Check(r.step > 0.0, node, "removal.step: must be > 0");
  Check(r.max_fraction >= 0.0 && r.max_fraction <= 1.0, node,
        "removal.max_fraction: grid must stay inside [0, 1]");
  if (node["directions"]) {
    r.directions = List(node["directions"], "removal.directions", [](const YAML::Node& c) {
      const std::string d = Text(c, "removal.directions");
      Check(d == "remove_best" || d == "remove_worst", c,
            "removal.directions: expected remove_best or remove_worst");
      return d;
    });
    Check(!r.directions.empty(), node["directions"], "removal.directions: must not be empty");
  }
}

std::string Short(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string_view CommandName(Command c) {
  switch (c) {
    case Command::kDiagnose: return "diagnose";
    case Command::kExact: return "exact";
    case Command::kSimulateError: return "simulate-error";
    case Command::kRemoval: return "removal";
    case Command::kGroupRemoval: return "group-removal";
  }
  return "?";
}

std::optional<Command> ParseCommand(std::string_view name) {
  for (Command c : {Command::kDiagnose, Command::kExact, Command::kSimulateError, Command::kRemoval,
                    Command::kGroupRemoval}) {
    if (CommandName(c) == name) return c;
  }
  return std::nullopt;
}

std::vector<double> RemovalSpec::Grid() const {
  std::vector<double> grid;
  // Integer steps keep the grid free of accumulated rounding.
  const auto count = static_cast<int>(std::floor(max_fraction / step + 1e-9));
  for (int k = 0; k <= count; ++k) grid.push_back(std::min(1.0, k * step));
  return grid;
}

std::uint64_t ExperimentConfig::MEval(std::uint64_t train) const {
  if (m_eval) return *m_eval;
  return static_cast<std::uint64_t>(std::llround(m_eval_multiplier * static_cast<double>(train)));
}

std::vector<double> ExperimentConfig::DiagnoseBetas() const {
  std::vector<double> all{0.0, 0.98, 0.99};
  for (double b : betas) {
    if (std::find(all.begin(), all.end(), b) == all.end()) all.push_back(b);
  }
  return all;
}

std::vector<std::string> KnownMethods(Command command) {
  std::vector<std::string> out{"permutation",     "dul_permutation",   "group_testing",
                               "dul_group_testing", "mc_least_core",   "dul_mc_least_core",
                               "exact_formula",   "dul_exact_formula", "cga"};
  if (command == Command::kRemoval || command == Command::kGroupRemoval) {
    out.insert(out.end(), {"random", "exact_shapley", "exact_least_core"});
  }
  return out;
}

ExperimentConfig DefaultConfig(Command command) {
  ExperimentConfig c;
  c.command = command;
  switch (command) {
    case Command::kDiagnose:
    case Command::kExact:
      c.game.kind = "synthetic-small";
      break;
    case Command::kSimulateError:
      c.game.kind = "synthetic-small";
      c.methods = {"permutation", "dul_permutation", "mc_least_core", "dul_mc_least_core"};
      c.m_train = {100, 200, 300};
      break;
    case Command::kRemoval:
      c.game.kind = "synthetic-large";
      c.methods = {"random", "permutation", "dul_permutation", "mc_least_core", "dul_mc_least_core"};
      c.m_train = {500};
      c.learner.mlp = MlpConfig::Removal();
      break;
    case Command::kGroupRemoval:
      c.game.kind = "groups";
      c.methods = {"random", "permutation", "dul_permutation", "mc_least_core", "dul_mc_least_core"};
      c.m_train = {500};
      c.m_eval = 5000;
      break;
  }
  return c;
}

ExperimentConfig ParseConfig(std::string_view yaml, Command command) {
  ExperimentConfig c = DefaultConfig(command);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::ParserException& e) {
    ConfigFail(e.mark, e.msg);
  }
  if (root.IsNull()) return c;
  CheckKeys(root,
            {"command", "seed", "game", "betas", "trials", "methods", "m_train",
             "m_eval_multiplier", "m_eval", "repetitions", "learner", "cga", "group_testing",
             "removal", "jobs", "output"},
            "config");
  if (root["command"]) {
    const std::string name = Text(root["command"], "command");
    Check(name == CommandName(command), root["command"],
          "config is for '" + name + "' but the command is '" + std::string(CommandName(command)) + "'");
  }
  if (root["seed"]) c.seed = NonNegative(root["seed"], "seed");
  if (root["game"]) ParseGame(root["game"], c.game);
  if (root["betas"]) {
    c.betas = List(root["betas"], "betas", [](const YAML::Node& b) {
      const double v = Real(b, "betas");
      Check(v >= 0.0 && v <= 1.0, b, "betas: values must lie in [0, 1]");
      return v;
    });
  }
  if (root["trials"]) c.trials = Positive(root["trials"], "trials");
  if (root["methods"]) {
    const std::vector<std::string> known = KnownMethods(command);
    c.methods = List(root["methods"], "methods", [&](const YAML::Node& m) {
      const std::string name = Text(m, "methods");
      Check(std::find(known.begin(), known.end(), name) != known.end(), m,
            "methods: '" + name + "' is not a registered method");
      return name;
    });
    Check(!c.methods.empty(), root["methods"], "methods: must not be empty");
  }
  if (root["m_train"]) {
    const YAML::Node node = root["m_train"];
    if (node.IsScalar()) {
      c.m_train = {static_cast<std::uint64_t>(Positive(node, "m_train"))};
    } else {
      c.m_train = List(node, "m_train", [](const YAML::Node& m) {
        return static_cast<std::uint64_t>(Positive(m, "m_train"));
      });
    }
    Check(!c.m_train.empty(), node, "m_train: must not be empty");
  }
  if (root["m_eval_multiplier"]) {
    c.m_eval_multiplier = Real(root["m_eval_multiplier"], "m_eval_multiplier");
    Check(c.m_eval_multiplier >= 0.0, root["m_eval_multiplier"], "m_eval_multiplier: must be >= 0");
    c.m_eval.reset();
  }
  if (root["m_eval"]) c.m_eval = NonNegative(root["m_eval"], "m_eval");
  if (root["repetitions"]) c.repetitions = Positive(root["repetitions"], "repetitions");
  if (root["learner"]) ParseLearner(root["learner"], c.learner);
  if (root["cga"]) ParseCga(root["cga"], c.cga);
  if (root["group_testing"]) ParseGroupTesting(root["group_testing"], c.group_testing);
  if (root["removal"]) ParseRemoval(root["removal"], c.removal);
  if (root["jobs"]) c.jobs = static_cast<int>(NonNegative(root["jobs"], "jobs"));
  if (root["output"]) c.output = Text(root["output"], "output");

  if (command == Command::kGroupRemoval) {
    Check(c.game.kind == "groups", root["game"] ? root["game"] : root,
          "group-removal needs game.kind: groups");
  }
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path, Command command) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kConfig, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), command);
}

std::string ExperimentConfig::ToYaml() const {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "command" << YAML::Value << std::string(CommandName(command));
  e << YAML::Key << "seed" << YAML::Value << seed;

  const GameSpec& g = game;
  e << YAML::Key << "game" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << g.kind;
  e << YAML::Key << "seed" << YAML::Value << g.seed;
  const auto reals = [&](const char* key, const std::vector<double>& v) {
    e << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double x : v) e << Short(x);
    e << YAML::EndSeq;
  };
  const auto ints = [&](const char* key, const std::vector<int>& v) {
    e << YAML::Key << key << YAML::Value << YAML::Flow << v;
  };
  if (g.kind == "modular") reals("weights", g.weights);
  if (g.kind == "majority" || g.kind == "unanimity") e << YAML::Key << "n" << YAML::Value << g.n;
  if (g.kind == "majority") e << YAML::Key << "quota" << YAML::Value << g.quota;
  if (g.kind == "unanimity") ints("carrier", g.carrier);
  if (g.kind == "coverage") {
    e << YAML::Key << "cover_sets" << YAML::Value << YAML::Flow << g.cover_sets;
    e << YAML::Key << "universe" << YAML::Value << g.universe;
    e << YAML::Key << "normalizer" << YAML::Value << Short(g.normalizer);
  }
  const bool data_game = g.kind == "synthetic-small" || g.kind == "synthetic-large" ||
                         g.kind == "csv" || g.kind == "groups";
  if (g.kind == "groups") {
    e << YAML::Key << "base" << YAML::Value << g.base;
    e << YAML::Key << "group_count" << YAML::Value << g.group_count;
    e << YAML::Key << "alpha" << YAML::Value << Short(g.alpha);
  }
  if (g.kind == "csv" || (g.kind == "groups" && g.base == "csv")) {
    e << YAML::Key << "path" << YAML::Value << g.path;
    e << YAML::Key << "label_column" << YAML::Value << g.label_column;
    e << YAML::Key << "test_fraction" << YAML::Value << Short(g.test_fraction);
  }
  if (data_game) {
    e << YAML::Key << "metric" << YAML::Value << std::string(MetricName(g.metric));
    e << YAML::Key << "logistic" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "learning_rate" << YAML::Value << Short(g.logistic.learning_rate);
    e << YAML::Key << "epochs" << YAML::Value << g.logistic.epochs;
    e << YAML::Key << "l2_penalty" << YAML::Value << Short(g.logistic.l2_penalty);
    e << YAML::EndMap;
  }
  e << YAML::EndMap;

  if (command == Command::kDiagnose) {
    reals("betas", DiagnoseBetas());
    e << YAML::Key << "trials" << YAML::Value << trials;
  }
  if (command == Command::kSimulateError || command == Command::kRemoval ||
      command == Command::kGroupRemoval) {
    e << YAML::Key << "methods" << YAML::Value << YAML::Flow << methods;
    e << YAML::Key << "m_train" << YAML::Value << YAML::Flow << m_train;
    if (m_eval) {
      e << YAML::Key << "m_eval" << YAML::Value << *m_eval;
    } else {
      e << YAML::Key << "m_eval_multiplier" << YAML::Value << Short(m_eval_multiplier);
    }
    e << YAML::Key << "repetitions" << YAML::Value << repetitions;

    e << YAML::Key << "learner" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "kind" << YAML::Value << learner.kind;
    if (learner.kind == "mlp") {
      const MlpConfig& m = learner.mlp;
      ints("hidden_sizes", m.hidden_sizes);
      e << YAML::Key << "leaky_slope" << YAML::Value << Short(m.leaky_slope);
      e << YAML::Key << "dropout" << YAML::Value << Short(m.dropout_rate);
      e << YAML::Key << "learning_rate" << YAML::Value << Short(m.learning_rate);
      e << YAML::Key << "batch_size" << YAML::Value << m.batch_size;
      e << YAML::Key << "epochs" << YAML::Value << m.max_epochs;
      e << YAML::Key << "standardize_targets" << YAML::Value << m.standardize_targets;
    }
    if (learner.kind == "poly") e << YAML::Key << "degree" << YAML::Value << learner.degree;
    e << YAML::EndMap;

    if (std::find(methods.begin(), methods.end(), "cga") != methods.end()) {
      e << YAML::Key << "cga" << YAML::Value << YAML::BeginMap;
      e << YAML::Key << "learning_rate" << YAML::Value << Short(cga.learning_rate);
      e << YAML::Key << "batch_size" << YAML::Value << cga.batch_size;
      e << YAML::Key << "epochs" << YAML::Value << cga.epochs;
      e << YAML::EndMap;
    }
    const bool gt = std::any_of(methods.begin(), methods.end(), [](const std::string& m) {
      return m.find("group_testing") != std::string::npos;
    });
    if (gt) {
      e << YAML::Key << "group_testing" << YAML::Value << YAML::BeginMap;
      e << YAML::Key << "epsilon" << YAML::Value << Short(group_testing.epsilon);
      e << YAML::Key << "solve_lp" << YAML::Value << group_testing.solve_lp;
      e << YAML::EndMap;
    }
  }
  if (command == Command::kRemoval || command == Command::kGroupRemoval) {
    e << YAML::Key << "removal" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "step" << YAML::Value << Short(removal.step);
    e << YAML::Key << "max_fraction" << YAML::Value << Short(removal.max_fraction);
    e << YAML::Key << "directions" << YAML::Value << YAML::Flow << removal.directions;
    e << YAML::EndMap;
  }
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace valgame::cli
