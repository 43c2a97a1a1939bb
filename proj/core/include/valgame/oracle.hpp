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

#ifndef VALGAME_ORACLE_HPP_
#define VALGAME_ORACLE_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "valgame/coalition.hpp"

namespace valgame {

struct Bounds {
  double lower = 0.0;
  double upper = 1.0;
};

// Characteristic function of a cooperative game. Implementations must be
// deterministic and safe to evaluate from several threads at once.
class UtilityOracle {
 public:
  virtual ~UtilityOracle() = default;

  virtual int n() const = 0;
  virtual Bounds bounds() const = 0;
  virtual double Evaluate(const Coalition& coalition) const = 0;
  // Number of true (non-cached) evaluations performed so far.
  virtual std::uint64_t eval_count() const = 0;
};

// Base for concrete games: validates the coalition, counts the call, checks the
// declared range, and forwards to Compute().
class CountingOracle : public UtilityOracle {
 public:
  CountingOracle(int n, Bounds bounds);

  int n() const final { return n_; }
  Bounds bounds() const final { return bounds_; }
  double Evaluate(const Coalition& coalition) const final;
  std::uint64_t eval_count() const final { return count_.load(std::memory_order_relaxed); }

 protected:
  virtual double Compute(const Coalition& coalition) const = 0;

 private:
  int n_;
  Bounds bounds_;
  mutable std::atomic<std::uint64_t> count_{0};
};

class FunctionOracle final : public CountingOracle {
 public:
  using Fn = std::function<double(const Coalition&)>;
  FunctionOracle(int n, Bounds bounds, Fn fn)
      : CountingOracle(n, bounds), fn_(std::move(fn)) {}

 protected:
  double Compute(const Coalition& coalition) const override { return fn_(coalition); }

 private:
  Fn fn_;
};

// Game given by its full table, indexed by bitmask. n <= 25.
class TableOracle final : public CountingOracle {
 public:
  TableOracle(int n, std::vector<double> values);
  TableOracle(int n, std::vector<double> values, Bounds bounds);

  std::span<const double> values() const { return values_; }

 protected:
  double Compute(const Coalition& coalition) const override;

 private:
  std::vector<double> values_;
};

// Caching wrapper keyed on the exact coalition. Concurrent lookups of the same
// missing coalition wait on one shared computation, so the inner oracle sees
// each coalition at most once. With a capacity cap, evaluations past the cap
// are forwarded uncached.
class MemoizedOracle final : public UtilityOracle {
 public:
  explicit MemoizedOracle(std::shared_ptr<const UtilityOracle> inner,
                          std::optional<std::size_t> capacity = std::nullopt);

  int n() const override { return inner_->n(); }
  Bounds bounds() const override { return inner_->bounds(); }
  double Evaluate(const Coalition& coalition) const override;
  // Calls forwarded to the inner oracle by this wrapper.
  std::uint64_t eval_count() const override { return misses_.load(std::memory_order_relaxed); }

  std::uint64_t hits() const { return hits_.load(std::memory_order_relaxed); }
  std::size_t cache_size() const;
  const UtilityOracle& inner() const { return *inner_; }

 private:
  std::shared_ptr<const UtilityOracle> inner_;
  std::optional<std::size_t> capacity_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Coalition, std::shared_future<double>> cache_;
  mutable std::atomic<std::uint64_t> misses_{0};
  mutable std::atomic<std::uint64_t> hits_{0};
};

std::shared_ptr<MemoizedOracle> Memoize(std::shared_ptr<const UtilityOracle> inner,
                                        std::optional<std::size_t> capacity = std::nullopt);

// Evaluates every coalition once, in bitmask order. n <= 25.
std::vector<double> FullTable(const UtilityOracle& oracle);

}  // namespace valgame

#endif  // VALGAME_ORACLE_HPP_
