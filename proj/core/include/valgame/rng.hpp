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

#ifndef VALGAME_RNG_HPP_
#define VALGAME_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace valgame {

// Platform-stable random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so every
// transform used by the library is implemented here:
//   uniform()      53 high bits scaled to [0, 1)
//   UniformInt(b)  rejection sampling on the top bits, exact on [0, b)
//   Normal()       Marsaglia polar method
//   Gamma(k)       Marsaglia-Tsang squeeze, with the k < 1 boost
//
// Child streams are derived from (seed, component name) only, never from the
// current engine state, so adding a new consumer leaves existing streams
// untouched.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  static std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view component);

  SeededRng Child(std::string_view component) const {
    return SeededRng(DeriveSeed(seed_, component));
  }
  SeededRng Child(std::string_view component, std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64() { return engine_(); }
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  std::uint64_t UniformInt(std::uint64_t bound);
  bool Coin() { return (NextU64() >> 63) != 0; }
  double Normal();
  double Gamma(double shape);

  // Fisher-Yates, last position first.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::vector<int> Permutation(int n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace valgame

#endif  // VALGAME_RNG_HPP_
