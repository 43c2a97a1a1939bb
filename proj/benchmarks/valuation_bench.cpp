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


#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "valgame/dataset.hpp"
#include "valgame/games.hpp"
#include "valgame/oracle.hpp"
#include "valgame/rng.hpp"
#include "valgame/valuation.hpp"

namespace valgame {
namespace {

std::vector<double> RandomTable(int n) {
  SeededRng rng(3);
  std::vector<double> t(std::size_t{1} << n);
  for (double& v : t) v = rng.Uniform();
  t[0] = 0.0;
  return t;
}

void BM_ShapleyFromTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> t = RandomTable(n);
  for (auto _ : state) benchmark::DoNotOptimize(ShapleyFromTable(t, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.size()));
}
BENCHMARK(BM_ShapleyFromTable)->DenseRange(10, 20, 5)->Unit(benchmark::kMillisecond);

void BM_LeastCoreFromTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> t = RandomTable(n);
  for (auto _ : state) benchmark::DoNotOptimize(LeastCoreFromTable(t, n));
}
BENCHMARK(BM_LeastCoreFromTable)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LogisticUtility(benchmark::State& state) {
  const auto data = std::make_shared<const Dataset>(MakeSyntheticLarge(0));
  const LogisticGame game(data, LogisticHyperparams{}, Metric::kAccuracy);
  SeededRng rng(4);
  for (auto _ : state) {
    Coalition s(game.n());
    for (int i = 0; i < game.n(); ++i) {
      if (rng.Coin()) s.insert(i);
    }
    benchmark::DoNotOptimize(game.Evaluate(s));
  }
}
BENCHMARK(BM_LogisticUtility)->Unit(benchmark::kMillisecond);

void BM_PermutationSampling(benchmark::State& state) {
  const auto data = std::make_shared<const Dataset>(MakeSyntheticSmall(0));
  const LogisticGame game(data, LogisticHyperparams{}, Metric::kAccuracy);
  const TableOracle table(10, FullTable(game), game.bounds());
  const auto budget = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(PermutationSampling(table, budget, SeededRng(5)));
}
BENCHMARK(BM_PermutationSampling)->Arg(300)->Arg(3000)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace valgame

BENCHMARK_MAIN();
