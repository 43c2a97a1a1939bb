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

#ifndef VALGAME_COALITION_HPP_
#define VALGAME_COALITION_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace valgame {

class SeededRng;

// A subset of the ground set {0, ..., n-1}. Player i is present iff bit i is
// set. The first 64 players live in an inline word; larger ground sets spill
// into a heap-allocated tail, so games with n <= 64 never allocate.
class Coalition {
 public:
  // Empty coalition over n players. Throws kInvalidGroundSet when n < 1.
  explicit Coalition(int n);

  static Coalition Full(int n);
  // Requires n <= 64 and no bit set at index >= n.
  static Coalition FromMask(int n, std::uint64_t mask);
  static Coalition FromMembers(int n, std::span<const int> members);
  // Parses an n-character 0/1 string, player 0 leftmost.
  static Coalition Parse(std::string_view bits);

  int n() const { return n_; }
  int size() const;
  bool empty() const { return size() == 0; }
  bool contains(int player) const;

  void insert(int player);
  void erase(int player);
  Coalition with(int player) const;
  Coalition without(int player) const;

  // Whole-set views. mask() requires n <= 64.
  std::uint64_t mask() const;
  int word_count() const { return 1 + static_cast<int>(tail_.size()); }
  std::uint64_t word(int index) const { return index == 0 ? head_ : tail_[index - 1]; }

  std::vector<int> members() const;
  std::string ToString() const;

  bool IsSubsetOf(const Coalition& other) const;
  Coalition Complement() const;
  Coalition Union(const Coalition& other) const;
  Coalition Intersection(const Coalition& other) const;

  std::size_t Hash() const;

  friend bool operator==(const Coalition& a, const Coalition& b) {
    return a.n_ == b.n_ && a.head_ == b.head_ && a.tail_ == b.tail_;
  }
  // Orders by player count, then by the coalition read as an n-bit integer.
  friend bool operator<(const Coalition& a, const Coalition& b);

 private:
  void CheckPlayer(int player) const;
  void CheckSameGround(const Coalition& other) const;
  std::uint64_t& word_ref(int index) { return index == 0 ? head_ : tail_[index - 1]; }

  int n_;
  std::uint64_t head_ = 0;
  std::vector<std::uint64_t> tail_;
};

// Each player is included independently with probability 1/2.
Coalition SampleUniformCoalition(SeededRng& rng, int n);

inline constexpr int kMaxEnumerationPlayers = 25;

// All 2^n coalitions in increasing bitmask order. Throws kEnumerationTooLarge
// for n > 25.
std::vector<Coalition> EnumerateCoalitions(int n);

}  // namespace valgame

template <>
struct std::hash<valgame::Coalition> {
  std::size_t operator()(const valgame::Coalition& c) const noexcept { return c.Hash(); }
};

#endif  // VALGAME_COALITION_HPP_
