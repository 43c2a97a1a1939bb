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

#include "valgame/games.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "valgame/error.hpp"
#include "valgame/rng.hpp"

namespace valgame {

std::shared_ptr<CountingOracle> ModularOracle(std::vector<double> weights) {
  Require(!weights.empty(), ErrorCode::kInvalidGroundSet, "modular oracle needs weights");
  Bounds b{0.0, 0.0};
  for (double w : weights) (w < 0.0 ? b.lower : b.upper) += w;
  const int n = static_cast<int>(weights.size());
  return std::make_shared<FunctionOracle>(n, b, [w = std::move(weights)](const Coalition& s) {
    double total = 0.0;
    for (int p : s.members()) total += w[static_cast<std::size_t>(p)];
    return total;
  });
}

namespace {

class Coverage final : public CountingOracle {
 public:
  Coverage(std::vector<std::vector<int>> cover_sets, int universe, double normalizer)
      : CountingOracle(static_cast<int>(cover_sets.size()),
                       Bounds{0.0, static_cast<double>(universe) / normalizer}),
        words_((universe + 63) / 64),
        normalizer_(normalizer) {
    bits_.assign(cover_sets.size() * words_, 0);
    for (std::size_t i = 0; i < cover_sets.size(); ++i) {
      for (int e : cover_sets[i]) {
        Require(e >= 0 && e < universe, ErrorCode::kInvalidArgument,
                "cover element outside the universe");
        bits_[i * words_ + static_cast<std::size_t>(e) / 64] |= std::uint64_t{1} << (e % 64);
      }
    }
  }

 protected:
  double Compute(const Coalition& s) const override {
    std::vector<std::uint64_t> acc(words_, 0);
    for (int p : s.members()) {
      for (std::size_t w = 0; w < words_; ++w) acc[w] |= bits_[static_cast<std::size_t>(p) * words_ + w];
    }
    int covered = 0;
    for (std::uint64_t w : acc) covered += std::popcount(w);
    return covered / normalizer_;
  }

 private:
  std::size_t words_;
  double normalizer_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

std::shared_ptr<CountingOracle> CoverageOracle(std::vector<std::vector<int>> cover_sets,
                                               int universe_size, double normalizer) {
  Require(universe_size >= 1, ErrorCode::kInvalidArgument, "coverage universe must be nonempty");
  Require(normalizer > 0.0, ErrorCode::kInvalidArgument, "coverage normalizer must be positive");
  Require(!cover_sets.empty(), ErrorCode::kInvalidGroundSet, "coverage oracle needs players");
  return std::make_shared<Coverage>(std::move(cover_sets), universe_size, normalizer);
}

std::shared_ptr<CountingOracle> MajorityOracle(int n, int quota) {
  return std::make_shared<FunctionOracle>(
      n, Bounds{0.0, 1.0}, [quota](const Coalition& s) { return s.size() >= quota ? 1.0 : 0.0; });
}

std::shared_ptr<CountingOracle> UnanimityOracle(const Coalition& carrier) {
  return std::make_shared<FunctionOracle>(carrier.n(), Bounds{0.0, 1.0},
                                          [carrier](const Coalition& s) {
                                            return carrier.IsSubsetOf(s) ? 1.0 : 0.0;
                                          });
}

LogisticGame::LogisticGame(std::shared_ptr<const Dataset> data, LogisticHyperparams hp,
                           Metric metric)
    : CountingOracle(data ? data->train_size() : 0, Bounds{0.0, 1.0}),
      data_(std::move(data)),
      hp_(hp),
      metric_(metric) {
  data_->Validate();
  hp_.Validate();
  BaselineMetric(*data_, metric_);  // rejects an undefined metric up front
}

double LogisticGame::Compute(const Coalition& coalition) const {
  return TrainLogistic(*data_, coalition, hp_, metric_);
}

std::vector<std::vector<int>> GroupPartition::Members() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(group_count));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[static_cast<std::size_t>(assignment[i])].push_back(static_cast<int>(i));
  }
  return out;
}

void GroupPartition::Validate() const {
  Require(group_count >= 1, ErrorCode::kInvalidArgument, "partition needs at least one group");
  for (int g : assignment) {
    Require(g >= 0 && g < group_count, ErrorCode::kInvalidArgument, "group index out of range");
  }
}

GroupGame::GroupGame(std::shared_ptr<const Dataset> data, GroupPartition partition,
                     LogisticHyperparams hp, Metric metric)
    : CountingOracle(partition.group_count, Bounds{0.0, 1.0}),
      data_(std::move(data)),
      partition_(std::move(partition)),
      hp_(hp),
      metric_(metric) {
  data_->Validate();
  hp_.Validate();
  partition_.Validate();
  Require(static_cast<int>(partition_.assignment.size()) == data_->train_size(),
          ErrorCode::kInvalidArgument, "partition does not cover the train pool");
  BaselineMetric(*data_, metric_);
  for (const auto& members : partition_.Members()) {
    std::vector<int> rows;
    for (int p : members) rows.push_back(data_->train[static_cast<std::size_t>(p)]);
    member_rows_.push_back(std::move(rows));
  }
}

double GroupGame::Compute(const Coalition& coalition) const {
  std::vector<int> rows;
  for (int g : coalition.members()) {
    const auto& m = member_rows_[static_cast<std::size_t>(g)];
    rows.insert(rows.end(), m.begin(), m.end());
  }
  return TrainLogisticRows(*data_, rows, hp_, metric_);
}

GroupPartition DrawDirichletPartition(int pool_size, int group_count, double alpha,
                                      std::uint64_t seed) {
  Require(group_count >= 1 && group_count <= pool_size, ErrorCode::kInvalidArgument,
          "group_count must lie in [1, pool size]");
  Require(alpha > 0.0, ErrorCode::kInvalidArgument, "Dirichlet alpha must be positive");
  SeededRng rng = SeededRng(seed).Child("dirichlet-partition");
  GroupPartition part;
  part.group_count = group_count;
  const auto g_count = static_cast<std::size_t>(group_count);
  while (true) {
    std::vector<double> p(g_count);
    double total = 0.0;
    for (double& v : p) total += (v = rng.Gamma(alpha));
    std::vector<int> sizes(g_count);
    std::vector<std::pair<double, int>> remainders;
    int assigned = 0;
    for (std::size_t g = 0; g < g_count; ++g) {
      const double share = p[g] / total * pool_size;
      sizes[g] = static_cast<int>(std::floor(share));
      assigned += sizes[g];
      remainders.emplace_back(share - sizes[g], static_cast<int>(g));
    }
    // Largest remainder first; lower index breaks ties.
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (int k = 0; k < pool_size - assigned; ++k) sizes[static_cast<std::size_t>(remainders[k].second)]++;
    if (std::any_of(sizes.begin(), sizes.end(), [](int s) { return s == 0; })) {
      ++part.redraws;
      continue;
    }
    std::vector<int> order(static_cast<std::size_t>(pool_size));
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(std::span<int>(order));
    part.assignment.assign(static_cast<std::size_t>(pool_size), 0);
    std::size_t pos = 0;
    for (std::size_t g = 0; g < g_count; ++g) {
      for (int k = 0; k < sizes[g]; ++k) part.assignment[static_cast<std::size_t>(order[pos++])] = static_cast<int>(g);
    }
    return part;
  }
}

std::pair<std::shared_ptr<GroupGame>, GroupPartition> DirichletGroupOracle(
    std::shared_ptr<const Dataset> data, int group_count, double alpha, std::uint64_t seed,
    const LogisticHyperparams& hp, Metric metric) {
  Require(data != nullptr, ErrorCode::kInvalidArgument, "group oracle needs a dataset");
  GroupPartition part = DrawDirichletPartition(data->train_size(), group_count, alpha, seed);
  auto game = std::make_shared<GroupGame>(std::move(data), part, hp, metric);
  return {std::move(game), std::move(part)};
}

}  // namespace valgame
