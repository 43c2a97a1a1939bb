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

#include "valgame/model.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace valgame {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckModel(const ConstantModel& m) {
  Require(m.n >= 1, ErrorCode::kInvalidArgument, "model needs n >= 1");
}

void CheckModel(const PolynomialModel& m) {
  Require(m.n >= 1 && m.degree >= 0, ErrorCode::kInvalidArgument, "bad polynomial shape");
  Require(m.monomials.size() == m.coefficients.size(), ErrorCode::kInvalidArgument,
          "monomial and coefficient counts differ");
  for (const auto& mono : m.monomials) {
    Require(static_cast<int>(mono.size()) <= m.degree, ErrorCode::kInvalidArgument,
            "monomial exceeds the model degree");
    for (int v : mono) {
      Require(v >= 0 && v < m.n, ErrorCode::kInvalidArgument, "monomial variable out of range");
    }
  }
}

void CheckModel(const Cga2Model& m) {
  Require(m.n >= 1, ErrorCode::kInvalidArgument, "model needs n >= 1");
  const std::size_t n = static_cast<std::size_t>(m.n);
  Require(m.w.size() == n && m.w_pair.size() == n * (n - 1) / 2, ErrorCode::kInvalidArgument,
          "cga2 parameter arrays have the wrong length");
}

void CheckModel(const MlpModel& m) {
  Require(m.n >= 1 && !m.layers.empty(), ErrorCode::kInvalidArgument, "bad mlp shape");
  int width = m.n;
  for (const MlpLayer& layer : m.layers) {
    Require(layer.in == width && layer.out >= 1 &&
                layer.weights.size() == static_cast<std::size_t>(layer.in) * layer.out &&
                layer.bias.size() == static_cast<std::size_t>(layer.out),
            ErrorCode::kInvalidArgument, "mlp layer shapes are inconsistent");
    width = layer.out;
  }
  Require(width == 1, ErrorCode::kInvalidArgument, "mlp output width must be 1");
}

template <typename T>
T Field(const json& j, const char* key) {
  if (!j.contains(key)) Fail(ErrorCode::kParse, std::string("model JSON lacks \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("model JSON field \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::size_t Cga2Model::PairIndex(int n, int i, int j) {
  // Row i of the strict upper triangle starts after sum_{r<i} (n-1-r) entries.
  const std::size_t ii = static_cast<std::size_t>(i);
  const std::size_t nn = static_cast<std::size_t>(n);
  return ii * (2 * nn - ii - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

UtilityModel::UtilityModel(ModelVariant model) : model_(std::move(model)) {
  std::visit([](const auto& m) { CheckModel(m); }, model_);
}

int UtilityModel::n() const {
  return std::visit([](const auto& m) { return m.n; }, model_);
}

std::string_view UtilityModel::kind() const {
  return std::visit(Overloaded{
                        [](const ConstantModel&) { return std::string_view("constant"); },
                        [](const PolynomialModel&) { return std::string_view("polynomial"); },
                        [](const Cga2Model&) { return std::string_view("cga2"); },
                        [](const MlpModel&) { return std::string_view("mlp"); },
                    },
                    model_);
}

double PredictMlp(const MlpModel& model, std::span<const double> input) {
  std::vector<double> cur(input.begin(), input.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const MlpLayer& layer = model.layers[l];
    next.assign(layer.bias.begin(), layer.bias.end());
    for (int o = 0; o < layer.out; ++o) {
      const double* w = layer.weights.data() + static_cast<std::size_t>(o) * layer.in;
      double acc = next[o];
      for (int i = 0; i < layer.in; ++i) acc += w[i] * cur[i];
      if (l + 1 < model.layers.size() && acc < 0.0) acc *= model.leaky_slope;
      next[o] = acc;
    }
    cur.swap(next);
  }
  return model.target_shift + model.target_scale * cur[0];
}

double UtilityModel::Predict(const Coalition& coalition) const {
  Require(coalition.n() == n(), ErrorCode::kInvalidArgument,
          "coalition over " + std::to_string(coalition.n()) + " players, model has " +
              std::to_string(n()));
  return std::visit(
      Overloaded{
          [](const ConstantModel& m) { return m.value; },
          [&](const PolynomialModel& m) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m.monomials.size(); ++k) {
              bool on = true;
              for (int v : m.monomials[k]) {
                if (!coalition.contains(v)) {
                  on = false;
                  break;
                }
              }
              if (on) acc += m.coefficients[k];
            }
            return acc;
          },
          [&](const Cga2Model& m) {
            const std::vector<int> members = coalition.members();
            double acc = m.w0;
            for (std::size_t a = 0; a < members.size(); ++a) {
              acc += m.w[members[a]];
              for (std::size_t b = a + 1; b < members.size(); ++b) acc += m.pair(members[a], members[b]);
            }
            return acc;
          },
          [&](const MlpModel& m) {
            std::vector<double> x(static_cast<std::size_t>(m.n), 0.0);
            for (int p : coalition.members()) x[p] = 1.0;
            return PredictMlp(m, x);
          },
      },
      model_);
}

std::string UtilityModel::ToJson() const {
  json j;
  j["kind"] = kind();
  j["n"] = n();
  std::visit(Overloaded{
                 [&](const ConstantModel& m) { j["value"] = m.value; },
                 [&](const PolynomialModel& m) {
                   j["degree"] = m.degree;
                   j["monomials"] = m.monomials;
                   j["coefficients"] = m.coefficients;
                 },
                 [&](const Cga2Model& m) {
                   j["w0"] = m.w0;
                   j["w"] = m.w;
                   j["w_pair"] = m.w_pair;
                 },
                 [&](const MlpModel& m) {
                   j["leaky_slope"] = m.leaky_slope;
                   j["target_shift"] = m.target_shift;
                   j["target_scale"] = m.target_scale;
                   json layers = json::array();
                   for (const MlpLayer& layer : m.layers) {
                     layers.push_back({{"in", layer.in},
                                       {"out", layer.out},
                                       {"weights", layer.weights},
                                       {"bias", layer.bias}});
                   }
                   j["layers"] = std::move(layers);
                 },
             },
             model_);
  return j.dump(2);
}

UtilityModel UtilityModel::FromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("model JSON: ") + e.what());
  }
  const std::string kind = Field<std::string>(j, "kind");
  const int n = Field<int>(j, "n");
  if (kind == "constant") return UtilityModel(ConstantModel{n, Field<double>(j, "value")});
  if (kind == "polynomial") {
    return UtilityModel(PolynomialModel{n, Field<int>(j, "degree"),
                                        Field<std::vector<std::vector<int>>>(j, "monomials"),
                                        Field<std::vector<double>>(j, "coefficients")});
  }
  if (kind == "cga2") {
    return UtilityModel(Cga2Model{n, Field<double>(j, "w0"), Field<std::vector<double>>(j, "w"),
                                  Field<std::vector<double>>(j, "w_pair")});
  }
  if (kind == "mlp") {
    MlpModel m;
    m.n = n;
    m.leaky_slope = Field<double>(j, "leaky_slope");
    m.target_shift = Field<double>(j, "target_shift");
    m.target_scale = Field<double>(j, "target_scale");
    for (const json& layer : Field<json>(j, "layers")) {
      m.layers.push_back({Field<int>(layer, "in"), Field<int>(layer, "out"),
                          Field<std::vector<double>>(layer, "weights"),
                          Field<std::vector<double>>(layer, "bias")});
    }
    return UtilityModel(std::move(m));
  }
  Fail(ErrorCode::kParse, "unknown model kind \"" + kind + "\"");
}

void UtilityModel::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  Require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
  out << ToJson() << '\n';
}

UtilityModel UtilityModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  Require(static_cast<bool>(in), ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str());
}

}  // namespace valgame
