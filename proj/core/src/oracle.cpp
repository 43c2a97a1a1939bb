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

#include "valgame/oracle.hpp"

#include <cmath>
#include <string>

#include "valgame/error.hpp"

namespace valgame {
namespace {

constexpr double kRangeSlack = 1e-12;

}  // namespace

CountingOracle::CountingOracle(int n, Bounds bounds) : n_(n), bounds_(bounds) {
  Require(n >= 1, ErrorCode::kInvalidGroundSet, "oracle needs at least one player");
  Require(bounds.lower <= bounds.upper, ErrorCode::kInvalidArgument,
          "oracle bounds must satisfy lower <= upper");
}

double CountingOracle::Evaluate(const Coalition& coalition) const {
  Require(coalition.n() == n_, ErrorCode::kInvalidArgument,
          "coalition over " + std::to_string(coalition.n()) + " players passed to a " +
              std::to_string(n_) + "-player oracle");
  count_.fetch_add(1, std::memory_order_relaxed);
  const double value = Compute(coalition);
  const double slack = kRangeSlack * (1.0 + std::abs(bounds_.lower) + std::abs(bounds_.upper));
  Require(value >= bounds_.lower - slack && value <= bounds_.upper + slack, ErrorCode::kRange,
          "utility " + std::to_string(value) + " outside declared bounds at " +
              coalition.ToString());
  return value;
}

namespace {

Bounds TableBounds(std::span<const double> values) {
  Bounds b{values.empty() ? 0.0 : values[0], values.empty() ? 0.0 : values[0]};
  for (double v : values) {
    b.lower = std::min(b.lower, v);
    b.upper = std::max(b.upper, v);
  }
  return b;
}

void CheckTableSize(int n, std::size_t size) {
  Require(n >= 1 && n <= kMaxEnumerationPlayers, ErrorCode::kEnumerationTooLarge,
          "table oracles need 1 <= n <= 25");
  Require(size == (std::size_t{1} << n), ErrorCode::kInvalidArgument,
          "table size " + std::to_string(size) + " is not 2^" + std::to_string(n));
}

}  // namespace

TableOracle::TableOracle(int n, std::vector<double> values)
    : CountingOracle(n, TableBounds(values)), values_(std::move(values)) {
  CheckTableSize(n, values_.size());
}

TableOracle::TableOracle(int n, std::vector<double> values, Bounds bounds)
    : CountingOracle(n, bounds), values_(std::move(values)) {
  CheckTableSize(n, values_.size());
}

double TableOracle::Compute(const Coalition& coalition) const {
  return values_[static_cast<std::size_t>(coalition.mask())];
}

MemoizedOracle::MemoizedOracle(std::shared_ptr<const UtilityOracle> inner,
                               std::optional<std::size_t> capacity)
    : inner_(std::move(inner)), capacity_(capacity) {
  Require(inner_ != nullptr, ErrorCode::kInvalidArgument, "memoize needs an oracle");
}

double MemoizedOracle::Evaluate(const Coalition& coalition) const {
  std::unique_lock<std::mutex> lock(mutex_);
  if (auto it = cache_.find(coalition); it != cache_.end()) {
    hits_.fetch_add(1, std::memory_order_relaxed);
    std::shared_future<double> pending = it->second;
    // get() may wait on another thread's computation.
    lock.unlock();
    return pending.get();
  }
  misses_.fetch_add(1, std::memory_order_relaxed);
  if (capacity_ && cache_.size() >= *capacity_) {
    lock.unlock();
    return inner_->Evaluate(coalition);
  }
  std::promise<double> promise;
  cache_.emplace(coalition, promise.get_future().share());
  lock.unlock();
  try {
    const double value = inner_->Evaluate(coalition);
    promise.set_value(value);
    return value;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

std::size_t MemoizedOracle::cache_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

std::shared_ptr<MemoizedOracle> Memoize(std::shared_ptr<const UtilityOracle> inner,
                                        std::optional<std::size_t> capacity) {
  return std::make_shared<MemoizedOracle>(std::move(inner), capacity);
}

std::vector<double> FullTable(const UtilityOracle& oracle) {
  const int n = oracle.n();
  Require(n <= kMaxEnumerationPlayers, ErrorCode::kEnumerationTooLarge,
          "full table needs n <= 25, got n=" + std::to_string(n));
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> table(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    table[m] = oracle.Evaluate(Coalition::FromMask(n, m));
  }
  return table;
}

}  // namespace valgame
