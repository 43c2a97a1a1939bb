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

#include "valgame/coalition.hpp"

#include <bit>

#include "valgame/error.hpp"
#include "valgame/rng.hpp"

namespace valgame {
namespace {

int WordsFor(int n) { return (n + 63) / 64; }

// Bits valid in the last word of an n-player coalition.
std::uint64_t LastWordMask(int n) {
  const int rem = n % 64;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

}  // namespace

Coalition::Coalition(int n) : n_(n) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet,
          "coalition needs at least one player, got n=" + std::to_string(n));
  tail_.assign(static_cast<std::size_t>(WordsFor(n) - 1), 0);
}

Coalition Coalition::Full(int n) {
  Coalition c(n);
  const int words = c.word_count();
  for (int w = 0; w < words; ++w) c.word_ref(w) = ~std::uint64_t{0};
  c.word_ref(words - 1) &= LastWordMask(n);
  return c;
}

Coalition Coalition::FromMask(int n, std::uint64_t mask) {
  Require(n <= 64, ErrorCode::kInvalidArgument, "FromMask needs n <= 64");
  Coalition c(n);
  Require((mask & ~LastWordMask(n)) == 0 || n == 64, ErrorCode::kInvalidArgument,
          "mask has bits at or beyond n=" + std::to_string(n));
  c.head_ = mask;
  return c;
}

Coalition Coalition::FromMembers(int n, std::span<const int> members) {
  Coalition c(n);
  for (int p : members) c.insert(p);
  return c;
}

Coalition Coalition::Parse(std::string_view bits) {
  Require(!bits.empty(), ErrorCode::kParse, "empty coalition string");
  Coalition c(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      c.insert(static_cast<int>(i));
    } else if (bits[i] != '0') {
      Fail(ErrorCode::kParse, "coalition string must be 0/1, got '" + std::string(bits) + "'");
    }
  }
  return c;
}

int Coalition::size() const {
  int total = std::popcount(head_);
  for (std::uint64_t w : tail_) total += std::popcount(w);
  return total;
}

void Coalition::CheckPlayer(int player) const {
  Require(player >= 0 && player < n_, ErrorCode::kInvalidArgument,
          "player " + std::to_string(player) + " outside ground set of size " +
              std::to_string(n_));
}

void Coalition::CheckSameGround(const Coalition& other) const {
  Require(n_ == other.n_, ErrorCode::kInvalidArgument, "coalitions over different ground sets");
}

bool Coalition::contains(int player) const {
  CheckPlayer(player);
  return (word(player / 64) >> (player % 64)) & 1U;
}

void Coalition::insert(int player) {
  CheckPlayer(player);
  word_ref(player / 64) |= std::uint64_t{1} << (player % 64);
}

void Coalition::erase(int player) {
  CheckPlayer(player);
  word_ref(player / 64) &= ~(std::uint64_t{1} << (player % 64));
}

Coalition Coalition::with(int player) const {
  Coalition c = *this;
  c.insert(player);
  return c;
}

Coalition Coalition::without(int player) const {
  Coalition c = *this;
  c.erase(player);
  return c;
}

std::uint64_t Coalition::mask() const {
  Require(n_ <= 64, ErrorCode::kInvalidArgument, "mask() needs n <= 64");
  return head_;
}

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int w = 0; w < word_count(); ++w) {
    std::uint64_t bits = word(w);
    while (bits != 0) {
      out.push_back(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string Coalition::ToString() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int p : members()) s[static_cast<std::size_t>(p)] = '1';
  return s;
}

bool Coalition::IsSubsetOf(const Coalition& other) const {
  CheckSameGround(other);
  for (int w = 0; w < word_count(); ++w) {
    if ((word(w) & ~other.word(w)) != 0) return false;
  }
  return true;
}

Coalition Coalition::Complement() const {
  Coalition c = Full(n_);
  for (int w = 0; w < word_count(); ++w) c.word_ref(w) &= ~word(w);
  return c;
}

Coalition Coalition::Union(const Coalition& other) const {
  CheckSameGround(other);
  Coalition c = *this;
  for (int w = 0; w < word_count(); ++w) c.word_ref(w) |= other.word(w);
  return c;
}

Coalition Coalition::Intersection(const Coalition& other) const {
  CheckSameGround(other);
  Coalition c = *this;
  for (int w = 0; w < word_count(); ++w) c.word_ref(w) &= other.word(w);
  return c;
}

std::size_t Coalition::Hash() const {
  std::uint64_t h = SplitMix64(static_cast<std::uint64_t>(n_) ^ head_);
  for (std::uint64_t w : tail_) h = SplitMix64(h ^ w);
  return static_cast<std::size_t>(h);
}

bool operator<(const Coalition& a, const Coalition& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (int w = a.word_count() - 1; w >= 0; --w) {
    if (a.word(w) != b.word(w)) return a.word(w) < b.word(w);
  }
  return false;
}

Coalition SampleUniformCoalition(SeededRng& rng, int n) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "cannot sample over an empty ground set");
  Coalition c(n);
  std::uint64_t bits = 0;
  for (int p = 0; p < n; ++p) {
    if (p % 64 == 0) bits = rng.NextU64();
    if ((bits >> (p % 64)) & 1U) c.insert(p);
  }
  return c;
}

std::vector<Coalition> EnumerateCoalitions(int n) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "cannot enumerate an empty ground set");
  Require(n <= kMaxEnumerationPlayers, ErrorCode::kEnumerationTooLarge,
          "refusing to enumerate 2^" + std::to_string(n) + " coalitions (limit n <= 25)");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Coalition> out;
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) out.push_back(Coalition::FromMask(n, m));
  return out;
}

}  // namespace valgame
