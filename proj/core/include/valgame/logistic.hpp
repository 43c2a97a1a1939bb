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

#ifndef VALGAME_LOGISTIC_HPP_
#define VALGAME_LOGISTIC_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "valgame/coalition.hpp"
#include "valgame/dataset.hpp"

namespace valgame {

struct LogisticHyperparams {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2_penalty = 1e-4;

  void Validate() const;
};

enum class Metric { kAccuracy, kF1 };

std::string_view MetricName(Metric m);
Metric ParseMetric(std::string_view name);

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  double Decision(std::span<const double> x) const;
};

// Full-batch gradient descent on the mean log-loss plus (l2/2)|w|^2, starting
// from zero. Rows are visited in ascending order whatever order they are
// passed in, so the fit depends only on the set of rows.
LogisticModel FitLogistic(const Dataset& data, std::span<const int> rows,
                          const LogisticHyperparams& hp);

// Test-set score of a fitted model. F1 is for the positive class with the
// sigmoid thresholded at 0.5.
double ScoreOnTest(const Dataset& data, const LogisticModel& model, Metric metric);

// Score of the constant majority-class predictor; the utility of no data.
double BaselineMetric(const Dataset& data, Metric metric);

// Trains on the listed dataset rows and scores on the test split. An empty row
// set returns BaselineMetric without training.
double TrainLogisticRows(const Dataset& data, std::span<const int> rows,
                         const LogisticHyperparams& hp, Metric metric);

// `subset` selects players of the train pool.
double TrainLogistic(const Dataset& data, const Coalition& subset, const LogisticHyperparams& hp,
                     Metric metric);

}  // namespace valgame

#endif  // VALGAME_LOGISTIC_HPP_
