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

#include "valgame/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "valgame/diagnostics.hpp"
#include "valgame/error.hpp"
#include "valgame/l1_regression.hpp"
#include "valgame/rng.hpp"

namespace valgame {
namespace {

int SampleGround(std::span<const UtilitySample> samples, const char* who) {
  Require(!samples.empty(), ErrorCode::kInvalidArgument, std::string(who) + " needs samples");
  const int n = samples.front().coalition.n();
  for (const UtilitySample& s : samples) {
    Require(s.coalition.n() == n, ErrorCode::kInvalidArgument,
            std::string(who) + ": samples mix ground sets");
    Require(std::isfinite(s.value), ErrorCode::kInvalidArgument,
            std::string(who) + ": non-finite sample value");
  }
  return n;
}

}  // namespace

// ---- PMAC ------------------------------------------------------------------

void PmacConfig::Validate() const {
  Require(a >= 1.0 / 3.0, ErrorCode::kInvalidArgument, "PMAC needs a >= 1/3");
  Require(b >= 0.0, ErrorCode::kInvalidArgument, "PMAC needs b >= 0");
  Require(lower <= upper, ErrorCode::kInvalidArgument, "PMAC needs L <= U");
  Require(epsilon > 0.0 && epsilon < 1.0, ErrorCode::kInvalidArgument,
          "PMAC epsilon must lie in (0, 1)");
  Require(delta > 0.0 && delta < 1.0, ErrorCode::kInvalidArgument, "PMAC delta must lie in (0, 1)");
}

double PmacConfig::Theta() const {
  const double r = 3.5 * a - 1.0 / 6.0;
  return 21.0 * a - 1.0 + std::sqrt(r * r + 2.0 * b * std::log(1.0 / epsilon));
}

double PmacConfig::Threshold() const { return 2.0 * Theta() * std::log(1.0 / epsilon); }

double PmacConfig::SandwichFactor() const {
  return 4.0 * Theta() * std::log(1.0 / epsilon) / lower;
}

UtilityModel PmacLearn(std::span<const UtilitySample> samples, const PmacConfig& cfg) {
  cfg.Validate();
  const int n = SampleGround(samples, "PMAC");
  double sum = 0.0;
  for (const UtilitySample& s : samples) {
    Require(s.value >= cfg.lower && s.value <= cfg.upper, ErrorCode::kRange,
            "PMAC sample value " + std::to_string(s.value) + " outside [L, U]");
    sum += s.value;
  }
  const double mu = sum / static_cast<double>(samples.size());
  return UtilityModel(ConstantModel{n, mu > cfg.Threshold() ? mu / 3.0 : cfg.lower});
}

double PmacSampleBound(const PmacConfig& cfg) {
  cfg.Validate();
  const double range = cfg.upper - cfg.lower;
  const double theta = cfg.Theta();
  const double le = std::log(1.0 / cfg.epsilon);
  return range * range * std::log(2.0 / cfg.delta) / (theta * theta * le * le);
}

std::int64_t PmacSampleSize(const PmacConfig& cfg) {
  const double bound = PmacSampleBound(cfg);
  Require(bound < 9e18, ErrorCode::kGuard, "PMAC sample size overflows");
  return static_cast<std::int64_t>(std::ceil(bound));
}

// ---- Polynomial regression ---------------------------------------------------

std::uint64_t MonomialCount(int variables, int degree) {
  Require(variables >= 0 && degree >= 0, ErrorCode::kInvalidArgument,
          "monomial count needs non-negative arguments");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(variables, k)
  for (int k = 0; k <= std::min(degree, variables); ++k) {
    if (k > 0) {
      // binom * (variables - k + 1) / k stays exact because C(v, k-1) * (v-k+1)
      // is divisible by k.
      const std::uint64_t factor = static_cast<std::uint64_t>(variables - k + 1);
      if (binom > kMax / factor) return kMax;
      binom = binom * factor / static_cast<std::uint64_t>(k);
    }
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

std::vector<std::vector<int>> EnumerateMonomials(std::span<const int> variables, int degree) {
  const std::uint64_t count = MonomialCount(static_cast<int>(variables.size()), degree);
  Require(count <= kMaxMonomials, ErrorCode::kGuard,
          "monomial count " + std::to_string(count) + " exceeds " + std::to_string(kMaxMonomials));
  std::vector<std::vector<int>> out;
  out.reserve(count);
  const int k = static_cast<int>(variables.size());
  std::vector<int> idx;
  for (int d = 0; d <= std::min(degree, k); ++d) {
    idx.resize(d);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<int> mono(d);
      for (int t = 0; t < d; ++t) mono[t] = variables[idx[t]];
      out.push_back(std::move(mono));
      int t = d - 1;
      while (t >= 0 && idx[t] == k - d + t) --t;
      if (t < 0) break;
      ++idx[t];
      for (int u = t + 1; u < d; ++u) idx[u] = idx[u - 1] + 1;
    }
  }
  return out;
}

PolyFit PacPolyLearn(std::span<const UtilitySample> samples, int degree,
                     std::span<const int> variables) {
  const int n = SampleGround(samples, "polynomial regression");
  Require(degree >= 0, ErrorCode::kInvalidArgument, "degree must be non-negative");
  std::vector<int> vars(variables.begin(), variables.end());
  std::sort(vars.begin(), vars.end());
  Require(std::adjacent_find(vars.begin(), vars.end()) == vars.end(), ErrorCode::kInvalidArgument,
          "variable set has duplicates");
  for (int v : vars) {
    Require(v >= 0 && v < n, ErrorCode::kInvalidArgument,
            "variable " + std::to_string(v) + " out of range");
  }
  std::vector<std::vector<int>> monomials = EnumerateMonomials(vars, degree);

  const int m = static_cast<int>(samples.size());
  const int k = static_cast<int>(monomials.size());
  DenseMatrix design(m, k);
  std::vector<double> y(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    const Coalition& c = samples[t].coalition;
    for (int j = 0; j < k; ++j) {
      bool on = true;
      for (int v : monomials[j]) on = on && c.contains(v);
      design(t, j) = on ? 1.0 : 0.0;
    }
    y[t] = samples[t].value;
  }
  const L1Fit fit = L1Regression(design, y);
  Require(fit.status == LpStatus::kOptimal, ErrorCode::kInfeasible,
          "l1 regression LP ended " + std::string(LpStatusName(fit.status)));
  return {UtilityModel(PolynomialModel{n, degree, std::move(monomials), fit.coefficients}),
          fit.l1_cost};
}

DegreeChoice ChooseDegreeAndVars(double a, double b, double epsilon, int n, int max_degree,
                                 std::optional<std::span<const double>> table) {
  Require(a >= 0.0 && b >= 0.0, ErrorCode::kInvalidArgument, "a and b must be non-negative");
  Require(epsilon > 0.0 && epsilon <= 1.0, ErrorCode::kInvalidArgument,
          "epsilon must lie in (0, 1]");
  Require(n >= 1 && max_degree >= 0, ErrorCode::kInvalidArgument, "need n >= 1, max_degree >= 0");
  const double rho = a + b;
  const double raw = std::ceil(4.0 * rho / epsilon * std::log(4.0 / epsilon));
  DegreeChoice out;
  out.uncapped_degree = raw > 1e9 ? 1000000000 : static_cast<int>(raw);
  out.capped = out.uncapped_degree > max_degree;
  out.degree = std::min(out.uncapped_degree, max_degree);
  if (!table) {
    out.variables.resize(static_cast<std::size_t>(n));
    std::iota(out.variables.begin(), out.variables.end(), 0);
    return out;
  }
  Require(rho > 0.0, ErrorCode::kInvalidArgument, "influence pruning needs a + b > 0");
  const InfluenceReport inf = TotalInfluence(*table, n);
  // 3^(-2d-1) underflows to 0 for large d, which keeps every variable.
  out.influence_threshold = std::pow(3.0, -2.0 * out.uncapped_degree - 1.0) *
                            std::pow(epsilon, 4.0) / (rho * rho);
  for (int i = 0; i < n; ++i) {
    if (inf.per_variable[i] >= out.influence_threshold) out.variables.push_back(i);
  }
  return out;
}

// ---- MLP ---------------------------------------------------------------------

void MlpConfig::Validate() const {
  Require(!hidden_sizes.empty(), ErrorCode::kInvalidArgument, "MLP needs a hidden layer");
  for (int h : hidden_sizes) {
    Require(h >= 1, ErrorCode::kInvalidArgument, "hidden sizes must be >= 1");
  }
  Require(leaky_slope >= 0.0, ErrorCode::kInvalidArgument, "leaky slope must be >= 0");
  Require(dropout_rate >= 0.0 && dropout_rate < 1.0, ErrorCode::kInvalidArgument,
          "dropout rate must lie in [0, 1)");
  Require(learning_rate > 0.0 && batch_size >= 1 && max_epochs >= 1, ErrorCode::kInvalidArgument,
          "MLP needs learning_rate > 0, batch_size >= 1, max_epochs >= 1");
}

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

class AdamState {
 public:
  explicit AdamState(std::size_t size) : m_(size, 0.0), v_(size, 0.0) {}

  void Step(std::vector<double>& params, const std::vector<double>& grad, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(kAdamBeta1, t_);
    const double c2 = 1.0 - std::pow(kAdamBeta2, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = kAdamBeta1 * m_[i] + (1.0 - kAdamBeta1) * grad[i];
      v_[i] = kAdamBeta2 * v_[i] + (1.0 - kAdamBeta2) * grad[i] * grad[i];
      params[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kAdamEps);
    }
  }

 private:
  std::vector<double> m_, v_;
  long t_ = 0;
};

// Flat parameter vector; layer l stores an out x in weight block then biases.
struct MlpShape {
  std::vector<int> widths;  // input, hidden..., 1
  std::vector<std::size_t> w_offset, b_offset;
  std::size_t size = 0;

  explicit MlpShape(std::vector<int> w) : widths(std::move(w)) {
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
      w_offset.push_back(size);
      size += static_cast<std::size_t>(widths[l]) * widths[l + 1];
      b_offset.push_back(size);
      size += static_cast<std::size_t>(widths[l + 1]);
    }
  }
  int layers() const { return static_cast<int>(widths.size()) - 1; }
};

}  // namespace

UtilityModel MlpLearn(std::span<const UtilitySample> samples, const MlpConfig& cfg) {
  cfg.Validate();
  const int n = SampleGround(samples, "MLP");
  const int m = static_cast<int>(samples.size());

  std::vector<int> widths{n};
  widths.insert(widths.end(), cfg.hidden_sizes.begin(), cfg.hidden_sizes.end());
  widths.push_back(1);
  const MlpShape shape(widths);
  const int layers = shape.layers();

  double shift = 0.0;
  double scale = 1.0;
  std::vector<double> target(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) target[s] = samples[s].value;
  if (cfg.standardize_targets) {
    for (double v : target) shift += v;
    shift /= m;
    double var = 0.0;
    for (double v : target) var += (v - shift) * (v - shift);
    var /= m;
    scale = var > 1e-24 ? std::sqrt(var) : 1.0;
    for (double& v : target) v = (v - shift) / scale;
  }

  const SeededRng root(cfg.seed);
  SeededRng init_rng = root.Child("mlp-init");
  SeededRng order_rng = root.Child("mlp-shuffle");
  SeededRng drop_rng = root.Child("mlp-dropout");

  std::vector<double> theta(shape.size);
  for (int l = 0; l < layers; ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(shape.widths[l]));
    const std::size_t w_end = shape.b_offset[l] + static_cast<std::size_t>(shape.widths[l + 1]);
    for (std::size_t i = shape.w_offset[l]; i < w_end; ++i) theta[i] = init_rng.Uniform(-bound, bound);
  }
  double target_mean = 0.0;
  for (double v : target) target_mean += v;
  theta[shape.b_offset[layers - 1]] = target_mean / m;

  std::vector<std::vector<int>> members(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) members[s] = samples[s].coalition.members();

  // Per-sample activations for one batch.
  std::vector<std::vector<double>> pre(static_cast<std::size_t>(layers));
  std::vector<std::vector<double>> act(static_cast<std::size_t>(layers));
  std::vector<std::vector<double>> mask(static_cast<std::size_t>(layers));
  for (int l = 0; l < layers; ++l) {
    pre[l].resize(static_cast<std::size_t>(shape.widths[l + 1]));
    act[l].resize(static_cast<std::size_t>(shape.widths[l + 1]));
    mask[l].assign(static_cast<std::size_t>(shape.widths[l + 1]), 1.0);
  }
  std::vector<double> grad(shape.size);
  std::vector<double> delta, delta_prev;
  AdamState adam(shape.size);
  const double keep = 1.0 - cfg.dropout_rate;
  const double slope = cfg.leaky_slope;

  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    order_rng.Shuffle(std::span<int>(order));
    for (int start = 0; start < m; start += cfg.batch_size) {
      const int stop = std::min(m, start + cfg.batch_size);
      const double inv_batch = 1.0 / (stop - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (int q = start; q < stop; ++q) {
        const int s = order[q];
        const std::vector<int>& on = members[s];
        // Forward. The first layer reads the sparse 0/1 input directly.
        for (int l = 0; l < layers; ++l) {
          const int in = shape.widths[l];
          const int out = shape.widths[l + 1];
          const double* w = theta.data() + shape.w_offset[l];
          const double* b = theta.data() + shape.b_offset[l];
          for (int o = 0; o < out; ++o) {
            double acc = b[o];
            const double* wr = w + static_cast<std::size_t>(o) * in;
            if (l == 0) {
              for (int i : on) acc += wr[i];
            } else {
              const std::vector<double>& x = act[l - 1];
              for (int i = 0; i < in; ++i) acc += wr[i] * x[i];
            }
            pre[l][o] = acc;
            if (l + 1 < layers) {
              double a = acc < 0.0 ? slope * acc : acc;
              if (cfg.dropout_rate > 0.0) {
                mask[l][o] = drop_rng.Uniform() < keep ? 1.0 / keep : 0.0;
                a *= mask[l][o];
              }
              act[l][o] = a;
            } else {
              act[l][o] = acc;
            }
          }
        }
        // Backward pass of the batch-mean squared error.
        delta.assign(1, 2.0 * (act[layers - 1][0] - target[s]) * inv_batch);
        for (int l = layers - 1; l >= 0; --l) {
          const int in = shape.widths[l];
          const int out = shape.widths[l + 1];
          const double* w = theta.data() + shape.w_offset[l];
          double* gw = grad.data() + shape.w_offset[l];
          double* gb = grad.data() + shape.b_offset[l];
          for (int o = 0; o < out; ++o) {
            const double d = delta[o];
            gb[o] += d;
            double* gr = gw + static_cast<std::size_t>(o) * in;
            if (l == 0) {
              for (int i : on) gr[i] += d;
            } else {
              const std::vector<double>& x = act[l - 1];
              for (int i = 0; i < in; ++i) gr[i] += d * x[i];
            }
          }
          if (l == 0) break;
          delta_prev.assign(static_cast<std::size_t>(in), 0.0);
          for (int o = 0; o < out; ++o) {
            const double* wr = w + static_cast<std::size_t>(o) * in;
            for (int i = 0; i < in; ++i) delta_prev[i] += wr[i] * delta[o];
          }
          for (int i = 0; i < in; ++i) {
            const double dz = pre[l - 1][i] < 0.0 ? slope : 1.0;
            delta_prev[i] *= dz * mask[l - 1][i];
          }
          delta.swap(delta_prev);
        }
      }
      adam.Step(theta, grad, cfg.learning_rate);
    }
  }

  MlpModel model;
  model.n = n;
  model.leaky_slope = slope;
  model.target_shift = shift;
  model.target_scale = scale;
  for (int l = 0; l < layers; ++l) {
    MlpLayer layer;
    layer.in = shape.widths[l];
    layer.out = shape.widths[l + 1];
    const auto w0 = theta.begin() + static_cast<std::ptrdiff_t>(shape.w_offset[l]);
    const auto b0 = theta.begin() + static_cast<std::ptrdiff_t>(shape.b_offset[l]);
    layer.weights.assign(w0, b0);
    layer.bias.assign(b0, b0 + layer.out);
    model.layers.push_back(std::move(layer));
  }
  return UtilityModel(std::move(model));
}

// ---- CGA ---------------------------------------------------------------------

void CgaConfig::Validate() const {
  Require(learning_rate > 0.0 && batch_size >= 1 && epochs >= 1, ErrorCode::kInvalidArgument,
          "CGA needs learning_rate > 0, batch_size >= 1, epochs >= 1");
}

UtilityModel CgaLearn(std::span<const UtilitySample> samples, const CgaConfig& cfg) {
  cfg.Validate();
  const int n = SampleGround(samples, "CGA");
  const int m = static_cast<int>(samples.size());
  Cga2Model model;
  model.n = n;
  model.w.assign(static_cast<std::size_t>(n), 0.0);
  model.w_pair.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) members[s] = samples[s].coalition.members();
  auto predict = [&](const std::vector<int>& on) {
    double acc = model.w0;
    for (std::size_t a = 0; a < on.size(); ++a) {
      acc += model.w[on[a]];
      for (std::size_t b = a + 1; b < on.size(); ++b) acc += model.pair(on[a], on[b]);
    }
    return acc;
  };

  SeededRng order_rng = SeededRng(cfg.seed).Child("cga-shuffle");
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> step;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    order_rng.Shuffle(std::span<int>(order));
    for (int start = 0; start < m; start += cfg.batch_size) {
      const int stop = std::min(m, start + cfg.batch_size);
      const double scale = 2.0 * cfg.learning_rate / (stop - start);
      // Residuals first, so the update is the gradient at the batch start.
      step.clear();
      for (int q = start; q < stop; ++q) {
        const int s = order[q];
        step.push_back(scale * (predict(members[s]) - samples[s].value));
      }
      for (int q = start; q < stop; ++q) {
        const std::vector<int>& on = members[order[q]];
        const double g = step[q - start];
        model.w0 -= g;
        for (std::size_t a = 0; a < on.size(); ++a) {
          model.w[on[a]] -= g;
          for (std::size_t b = a + 1; b < on.size(); ++b) {
            model.w_pair[Cga2Model::PairIndex(n, on[a], on[b])] -= g;
          }
        }
      }
    }
  }
  return UtilityModel(std::move(model));
}

std::vector<double> CgaShapley(const UtilityModel& model) {
  const Cga2Model& m = model.as<Cga2Model>();
  std::vector<double> phi(m.w);
  for (int i = 0; i < m.n; ++i) {
    for (int j = i + 1; j < m.n; ++j) {
      const double half = 0.5 * m.pair(i, j);
      phi[i] += half;
      phi[j] += half;
    }
  }
  return phi;
}

std::uint64_t CgaParameterCount(int n) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "n must be >= 1");
  const std::uint64_t nn = static_cast<std::uint64_t>(n);
  return nn + nn * (nn - 1) / 2;
}

}  // namespace valgame
