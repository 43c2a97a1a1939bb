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

#include "valgame/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "valgame/error.hpp"

namespace valgame {

void LogisticHyperparams::Validate() const {
  Require(learning_rate > 0.0, ErrorCode::kInvalidArgument, "learning_rate must be positive");
  Require(epochs >= 1, ErrorCode::kInvalidArgument, "epochs must be at least 1");
  Require(l2_penalty >= 0.0, ErrorCode::kInvalidArgument, "l2_penalty must be non-negative");
}

std::string_view MetricName(Metric m) { return m == Metric::kAccuracy ? "accuracy" : "f1"; }

Metric ParseMetric(std::string_view name) {
  if (name == "accuracy") return Metric::kAccuracy;
  if (name == "f1") return Metric::kF1;
  Fail(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
}

double LogisticModel::Decision(std::span<const double> x) const {
  double z = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[j];
  return z;
}

namespace {

// sigma(-t), stable for large |t|.
double SigmoidNeg(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

struct Counts {
  int positives = 0;
  int negatives = 0;
};

Counts TestCounts(const Dataset& data) {
  Counts c;
  for (int r : data.test) (data.labels[r] > 0 ? c.positives : c.negatives)++;
  return c;
}

void CheckMetricDefined(const Dataset& data, Metric metric) {
  Require(!data.test.empty(), ErrorCode::kUndefinedMetric, "empty test set");
  if (metric == Metric::kF1) {
    const Counts c = TestCounts(data);
    Require(c.positives > 0 && c.negatives > 0, ErrorCode::kUndefinedMetric,
            "F1 is undefined on a single-class test set");
  }
}

double F1(int tp, int fp, int fn) {
  const int denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * tp / denom;
}

}  // namespace

LogisticModel FitLogistic(const Dataset& data, std::span<const int> rows,
                          const LogisticHyperparams& hp) {
  hp.Validate();
  std::vector<int> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const std::size_t dim = static_cast<std::size_t>(data.dim);
  LogisticModel model;
  model.weights.assign(dim, 0.0);
  if (m == 0) return model;

  std::vector<double> x(m * dim);
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto src = data.row(sorted[i]);
    std::copy(src.begin(), src.end(), x.begin() + static_cast<std::ptrdiff_t>(i * dim));
    y[i] = data.labels[sorted[i]];
  }
  std::vector<double> grad(dim);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* xi = x.data() + i * dim;
      double z = model.bias;
      for (std::size_t j = 0; j < dim; ++j) z += model.weights[j] * xi[j];
      // d/dz of log(1 + exp(-y z)) is -y sigma(-y z).
      const double g = -y[i] * SigmoidNeg(y[i] * z);
      for (std::size_t j = 0; j < dim; ++j) grad[j] += g * xi[j];
      grad_b += g;
    }
    for (std::size_t j = 0; j < dim; ++j) {
      model.weights[j] -= hp.learning_rate * (grad[j] * inv_m + hp.l2_penalty * model.weights[j]);
    }
    model.bias -= hp.learning_rate * grad_b * inv_m;
  }
  return model;
}

double ScoreOnTest(const Dataset& data, const LogisticModel& model, Metric metric) {
  CheckMetricDefined(data, metric);
  int correct = 0, tp = 0, fp = 0, fn = 0;
  for (int r : data.test) {
    const int pred = model.Decision(data.row(r)) >= 0.0 ? 1 : -1;
    const int truth = data.labels[r];
    correct += pred == truth;
    tp += pred > 0 && truth > 0;
    fp += pred > 0 && truth < 0;
    fn += pred < 0 && truth > 0;
  }
  if (metric == Metric::kAccuracy) return static_cast<double>(correct) / data.test.size();
  return F1(tp, fp, fn);
}

double BaselineMetric(const Dataset& data, Metric metric) {
  CheckMetricDefined(data, metric);
  const Counts c = TestCounts(data);
  const bool predict_positive = c.positives >= c.negatives;
  if (metric == Metric::kAccuracy) {
    return static_cast<double>(predict_positive ? c.positives : c.negatives) / data.test.size();
  }
  return predict_positive ? F1(c.positives, c.negatives, 0) : 0.0;
}

double TrainLogisticRows(const Dataset& data, std::span<const int> rows,
                         const LogisticHyperparams& hp, Metric metric) {
  if (rows.empty()) return BaselineMetric(data, metric);
  return ScoreOnTest(data, FitLogistic(data, rows, hp), metric);
}

double TrainLogistic(const Dataset& data, const Coalition& subset, const LogisticHyperparams& hp,
                     Metric metric) {
  Require(subset.n() == data.train_size(), ErrorCode::kInvalidArgument,
          "coalition width does not match the train pool");
  std::vector<int> rows;
  for (int p : subset.members()) rows.push_back(data.train[static_cast<std::size_t>(p)]);
  return TrainLogisticRows(data, rows, hp, metric);
}

}  // namespace valgame
