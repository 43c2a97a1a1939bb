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

#ifndef VALGAME_GAMES_HPP_
#define VALGAME_GAMES_HPP_

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "valgame/dataset.hpp"
#include "valgame/logistic.hpp"
#include "valgame/oracle.hpp"

namespace valgame {

// U(S) = sum of weights over S.
std::shared_ptr<CountingOracle> ModularOracle(std::vector<double> weights);

// U(S) = |union of cover_sets[i], i in S| / normalizer. Elements are indices
// into a universe of `universe_size` items.
std::shared_ptr<CountingOracle> CoverageOracle(std::vector<std::vector<int>> cover_sets,
                                               int universe_size, double normalizer = 1.0);

// U(S) = 1 if |S| >= quota else 0.
std::shared_ptr<CountingOracle> MajorityOracle(int n, int quota);

// U(S) = 1 if carrier is a subset of S else 0.
std::shared_ptr<CountingOracle> UnanimityOracle(const Coalition& carrier);

// Players are the train-pool points; U(S) is the test metric of a logistic
// model fitted on S. Bounds are [0, 1].
class LogisticGame final : public CountingOracle {
 public:
  LogisticGame(std::shared_ptr<const Dataset> data, LogisticHyperparams hp, Metric metric);

  const Dataset& data() const { return *data_; }

 protected:
  double Compute(const Coalition& coalition) const override;

 private:
  std::shared_ptr<const Dataset> data_;
  LogisticHyperparams hp_;
  Metric metric_;
};

struct GroupPartition {
  std::vector<int> assignment;  // group index per train-pool point
  int group_count = 0;
  int redraws = 0;  // Dirichlet draws discarded for leaving a group empty

  std::vector<std::vector<int>> Members() const;
  void Validate() const;
};

// Players are groups of train-pool points; U(groups) trains on the union of
// the member points.
class GroupGame final : public CountingOracle {
 public:
  GroupGame(std::shared_ptr<const Dataset> data, GroupPartition partition, LogisticHyperparams hp,
            Metric metric);

  const GroupPartition& partition() const { return partition_; }

 protected:
  double Compute(const Coalition& coalition) const override;

 private:
  std::shared_ptr<const Dataset> data_;
  GroupPartition partition_;
  std::vector<std::vector<int>> member_rows_;
  LogisticHyperparams hp_;
  Metric metric_;
};

// Group proportions p ~ Dirichlet(alpha * 1). The train pool is shuffled and
// cut into consecutive blocks of sizes given by largest-remainder rounding of
// p * pool_size; a draw leaving any group empty is discarded and redrawn.
GroupPartition DrawDirichletPartition(int pool_size, int group_count, double alpha,
                                      std::uint64_t seed);

std::pair<std::shared_ptr<GroupGame>, GroupPartition> DirichletGroupOracle(
    std::shared_ptr<const Dataset> data, int group_count, double alpha, std::uint64_t seed,
    const LogisticHyperparams& hp, Metric metric);

}  // namespace valgame

#endif  // VALGAME_GAMES_HPP_
