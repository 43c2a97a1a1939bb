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


#ifndef VALGAME_TESTS_RANDOM_GAMES_HPP_
#define VALGAME_TESTS_RANDOM_GAMES_HPP_

#include <memory>
#include <string>
#include <vector>

#include "valgame/coalition.hpp"
#include "valgame/games.hpp"
#include "valgame/rng.hpp"

namespace valgame::testing {

struct NamedGame {
  std::string kind;
  std::shared_ptr<CountingOracle> oracle;
};

// kind_index cycles modular, coverage, majority, unanimity.
inline NamedGame RandomAnalyticGame(int kind_index, int n, SeededRng& rng) {
  switch (kind_index % 4) {
    case 0: {
      std::vector<double> w(n);
      for (double& x : w) x = rng.Uniform(-1.0, 1.0);
      return {"modular", ModularOracle(w)};
    }
    case 1: {
      const int universe = 24;
      std::vector<std::vector<int>> sets(n);
      for (auto& s : sets) {
        for (int e = 0; e < universe; ++e) {
          if (rng.Uniform() < 0.2) s.push_back(e);
        }
      }
      return {"coverage", CoverageOracle(sets, universe, universe)};
    }
    case 2:
      return {"majority", MajorityOracle(n, 1 + static_cast<int>(rng.UniformInt(n)))};
    default: {
      Coalition carrier(n);
      while (carrier.empty()) {
        for (int i = 0; i < n; ++i) {
          if (rng.Coin()) carrier.insert(i);
        }
      }
      return {"unanimity", UnanimityOracle(carrier)};
    }
  }
}

}  // namespace valgame::testing

#endif  // VALGAME_TESTS_RANDOM_GAMES_HPP_
