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

#ifndef VALGAME_LEARNERS_HPP_
#define VALGAME_LEARNERS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "valgame/model.hpp"
#include "valgame/samples.hpp"

namespace valgame {

// ---- PMAC constant learner -------------------------------------------------

struct PmacConfig {
  double a = 1.0;
  double b = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  double epsilon = 0.1;
  double delta = 0.1;

  // Throws kInvalidArgument unless a >= 1/3, b >= 0, L <= U, epsilon and
  // delta in (0, 1).
  void Validate() const;
  // theta = 21a - 1 + sqrt((7a/2 - 1/6)^2 + 2b ln(1/eps)).
  double Theta() const;
  // 2 theta ln(1/eps): sample means above it select the mu/3 branch.
  double Threshold() const;
  double C() const { return (3.0 * a - 1.0) / 6.0; }
  // Upper sandwich factor 4 theta ln(1/eps) / L.
  double SandwichFactor() const;
};

// Returns constant mu/3 when the sample mean mu exceeds Threshold(), else L.
UtilityModel PmacLearn(std::span<const UtilitySample> samples, const PmacConfig& cfg);

// (U - L)^2 ln(2/delta) / (theta^2 ln^2(1/eps)) before rounding up.
double PmacSampleBound(const PmacConfig& cfg);
std::int64_t PmacSampleSize(const PmacConfig& cfg);

// ---- Low-degree polynomial l1 regression -----------------------------------

inline constexpr std::uint64_t kMaxMonomials = 100000;

// sum_{k <= degree} C(variables, k); saturates at UINT64_MAX.
std::uint64_t MonomialCount(int variables, int degree);

// Every monomial of degree <= `degree` over `variables`, by degree, then
// lexicographically. Throws kGuard past kMaxMonomials.
std::vector<std::vector<int>> EnumerateMonomials(std::span<const int> variables, int degree);

struct PolyFit {
  UtilityModel model;
  double l1_residual = 0.0;  // sum over samples of |p(S) - value|
};

PolyFit PacPolyLearn(std::span<const UtilitySample> samples, int degree,
                     std::span<const int> variables);

struct DegreeChoice {
  int degree = 0;           // after the cap
  int uncapped_degree = 0;  // ceil(4 rho / eps * ln(4 / eps)), rho = a + b
  bool capped = false;
  std::vector<int> variables;
  double influence_threshold = 0.0;  // only set when pruning ran
};

inline constexpr int kDefaultMaxDegree = 3;

// Without a table every variable is kept. With a full table (bitmask-indexed)
// variables whose exact influence is below 3^(-2d-1) eps^4 / rho^2 are
// dropped, d being the uncapped degree.
DegreeChoice ChooseDegreeAndVars(double a, double b, double epsilon, int n,
                                 int max_degree = kDefaultMaxDegree,
                                 std::optional<std::span<const double>> table = std::nullopt);

// ---- MLP ----------------------------------------------------------------------

struct MlpConfig {
  std::vector<int> hidden_sizes{20, 10};
  double leaky_slope = 0.01;
  double dropout_rate = 0.0;
  double learning_rate = 1e-3;
  int batch_size = 32;
  int max_epochs = 800;
  // Train on z-scored targets and map predictions back.
  bool standardize_targets = true;
  std::uint64_t seed = 0;

  static MlpConfig Small() { return {}; }
  static MlpConfig Removal() {
    MlpConfig c;
    c.hidden_sizes = {100, 50, 20};
    return c;
  }
  void Validate() const;
};

// Adam on mean squared error with mini-batches, PyTorch-style uniform
// initialisation, inverted dropout during training only.
UtilityModel MlpLearn(std::span<const UtilitySample> samples, const MlpConfig& cfg);

// ---- Order-2 cooperative game abstraction --------------------------------------

struct CgaConfig {
  double learning_rate = 1e-3;
  int batch_size = 32;
  int epochs = 800;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Least squares by mini-batch SGD from zero initialisation.
UtilityModel CgaLearn(std::span<const UtilitySample> samples, const CgaConfig& cfg);

// phi_i = w_i + 1/2 sum_{j != i} w_ij. Throws kWrongVariant for other models.
std::vector<double> CgaShapley(const UtilityModel& model);

// Singleton plus pair weights, n + C(n, 2); the intercept is not counted.
std::uint64_t CgaParameterCount(int n);

}  // namespace valgame

#endif  // VALGAME_LEARNERS_HPP_
