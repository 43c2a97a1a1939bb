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

#ifndef VALGAME_MODEL_HPP_
#define VALGAME_MODEL_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "valgame/coalition.hpp"
#include "valgame/error.hpp"

namespace valgame {

struct ConstantModel {
  int n = 1;
  double value = 0.0;
};

// p(S) = sum_k coefficients[k] * prod_{i in monomials[k]} 1[i in S]. The empty
// monomial is the intercept.
struct PolynomialModel {
  int n = 1;
  int degree = 0;
  std::vector<std::vector<int>> monomials;
  std::vector<double> coefficients;
};

// v(S) = w0 + sum_{i in S} w_i + sum_{i<j in S} w_ij. Pair weights are packed
// row by row over the strict upper triangle.
struct Cga2Model {
  int n = 1;
  double w0 = 0.0;
  std::vector<double> w;
  std::vector<double> w_pair;

  static std::size_t PairIndex(int n, int i, int j);  // requires i < j
  double pair(int i, int j) const { return w_pair[PairIndex(n, i, j)]; }
};

struct MlpLayer {
  int in = 0;
  int out = 0;
  std::vector<double> weights;  // out x in, row-major
  std::vector<double> bias;
};

// Dense network on the n-bit indicator vector; leaky-ReLU after every hidden
// layer, linear output. Predictions are mapped back to utility units as
// target_shift + target_scale * output.
struct MlpModel {
  int n = 1;
  double leaky_slope = 0.01;
  std::vector<MlpLayer> layers;
  double target_shift = 0.0;
  double target_scale = 1.0;
};

using ModelVariant = std::variant<ConstantModel, PolynomialModel, Cga2Model, MlpModel>;

// Immutable learned predictor Coalition -> value.
class UtilityModel {
 public:
  UtilityModel(ModelVariant model);  // NOLINT(google-explicit-constructor)

  int n() const;
  std::string_view kind() const;
  double Predict(const Coalition& coalition) const;

  const ModelVariant& variant() const { return model_; }
  template <typename T>
  const T& as() const;

  // Self-describing JSON: {"kind": ..., parameter arrays}. Doubles use the
  // shortest round-trip representation, so reading back is bit-exact.
  std::string ToJson() const;
  static UtilityModel FromJson(std::string_view text);
  void Save(const std::filesystem::path& path) const;
  static UtilityModel Load(const std::filesystem::path& path);

 private:
  ModelVariant model_;
};

template <typename T>
const T& UtilityModel::as() const {
  const T* p = std::get_if<T>(&model_);
  if (p == nullptr) Fail(ErrorCode::kWrongVariant, "model is " + std::string(kind()));
  return *p;
}

double PredictMlp(const MlpModel& model, std::span<const double> input);

}  // namespace valgame

#endif  // VALGAME_MODEL_HPP_
