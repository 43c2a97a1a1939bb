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

#ifndef VALGAME_LP_HPP_
#define VALGAME_LP_HPP_

#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace valgame {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Row-major dense matrix with a fixed column count.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[Index(r, c)]; }
  double operator()(int r, int c) const { return data_[Index(r, c)]; }

  std::span<double> row(int r) { return {data_.data() + Index(r, 0), static_cast<std::size_t>(cols_)}; }
  std::span<const double> row(int r) const {
    return {data_.data() + Index(r, 0), static_cast<std::size_t>(cols_)};
  }

  void AppendRow(std::span<const double> values);
  void Reserve(int rows) { data_.reserve(static_cast<std::size_t>(rows) * cols_); }

 private:
  std::size_t Index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// minimize c'x  s.t.  A x <= b,  E x = d,  lower <= x <= upper.
// Bounds default to [0, +inf); use -kInf / kInf for free directions.
struct LinearProgram {
  explicit LinearProgram(int num_vars);

  int num_vars() const { return static_cast<int>(objective.size()); }

  void AddInequality(std::span<const double> coeffs, double rhs);
  void AddEquality(std::span<const double> coeffs, double rhs);
  void SetFree(int var);
  void Validate() const;

  std::vector<double> objective;
  DenseMatrix a_ineq;
  std::vector<double> b_ineq;
  DenseMatrix a_eq;
  std::vector<double> b_eq;
  std::vector<double> lower;
  std::vector<double> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;  // empty unless optimal
  double objective_value = 0.0;
  // Row multipliers at the optimum: dual_ineq[i] = d(objective)/d(b_ineq[i])
  // (never positive) and dual_eq[i] = d(objective)/d(b_eq[i]).
  std::vector<double> dual_ineq;
  std::vector<double> dual_eq;
  int pivots = 0;
};

// Dense two-phase tableau simplex. Dantzig pricing, switching to Bland's rule
// after a run of degenerate pivots, so the pivot sequence is deterministic and
// cannot cycle. Throws kInvalidArgument on inconsistent dimensions or NaNs.
LpSolution SolveLp(const LinearProgram& lp);

}  // namespace valgame

#endif  // VALGAME_LP_HPP_
