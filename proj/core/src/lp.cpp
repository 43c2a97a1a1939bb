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

#include "valgame/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "valgame/error.hpp"

namespace valgame {

DenseMatrix::DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  Require(rows >= 0 && cols >= 0, ErrorCode::kInvalidArgument, "negative matrix shape");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
}

void DenseMatrix::AppendRow(std::span<const double> values) {
  Require(static_cast<int>(values.size()) == cols_, ErrorCode::kInvalidArgument,
          "row width " + std::to_string(values.size()) + " != " + std::to_string(cols_));
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

LinearProgram::LinearProgram(int num_vars)
    : objective(static_cast<std::size_t>(std::max(num_vars, 0)), 0.0),
      a_ineq(0, num_vars),
      a_eq(0, num_vars),
      lower(static_cast<std::size_t>(std::max(num_vars, 0)), 0.0),
      upper(static_cast<std::size_t>(std::max(num_vars, 0)), kInf) {
  Require(num_vars >= 1, ErrorCode::kInvalidArgument, "linear program needs a variable");
}

void LinearProgram::AddInequality(std::span<const double> coeffs, double rhs) {
  a_ineq.AppendRow(coeffs);
  b_ineq.push_back(rhs);
}

void LinearProgram::AddEquality(std::span<const double> coeffs, double rhs) {
  a_eq.AppendRow(coeffs);
  b_eq.push_back(rhs);
}

void LinearProgram::SetFree(int var) {
  lower.at(static_cast<std::size_t>(var)) = -kInf;
  upper.at(static_cast<std::size_t>(var)) = kInf;
}

void LinearProgram::Validate() const {
  const int n = num_vars();
  Require(n >= 1, ErrorCode::kInvalidArgument, "linear program needs a variable");
  Require(a_ineq.cols() == n && a_eq.cols() == n, ErrorCode::kInvalidArgument,
          "constraint matrix width does not match variable count");
  Require(static_cast<int>(b_ineq.size()) == a_ineq.rows() &&
              static_cast<int>(b_eq.size()) == a_eq.rows(),
          ErrorCode::kInvalidArgument, "right-hand side length does not match row count");
  Require(static_cast<int>(lower.size()) == n && static_cast<int>(upper.size()) == n,
          ErrorCode::kInvalidArgument, "bound vectors do not match variable count");
  auto finite = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  Require(finite(objective) && finite(b_ineq) && finite(b_eq), ErrorCode::kInvalidArgument,
          "objective and right-hand sides must be finite");
  for (int r = 0; r < a_ineq.rows(); ++r) {
    Require(finite(a_ineq.row(r)), ErrorCode::kInvalidArgument, "non-finite inequality coefficient");
  }
  for (int r = 0; r < a_eq.rows(); ++r) {
    Require(finite(a_eq.row(r)), ErrorCode::kInvalidArgument, "non-finite equality coefficient");
  }
  for (int j = 0; j < n; ++j) {
    Require(!std::isnan(lower[j]) && !std::isnan(upper[j]) && lower[j] != kInf && upper[j] != -kInf,
            ErrorCode::kInvalidArgument, "invalid bound for variable " + std::to_string(j));
  }
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kDegenerateRunBeforeBland = 50;

// x_j = offset + sign * p[col] (- p[col2] when free).
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  int col = -1;
  int col2 = -1;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), width_(cols + 1), t_(static_cast<std::size_t>(rows) * width_, 0.0),
        phase1_(width_, 0.0), phase2_(width_, 0.0), basis_(rows, -1), allowed_(cols, true) {}

  int rows() const { return m_; }
  int cols() const { return width_ - 1; }
  double& at(int r, int c) { return t_[static_cast<std::size_t>(r) * width_ + c]; }
  double at(int r, int c) const { return t_[static_cast<std::size_t>(r) * width_ + c]; }
  double& rhs(int r) { return at(r, width_ - 1); }
  std::vector<double>& phase1() { return phase1_; }
  std::vector<double>& phase2() { return phase2_; }
  std::vector<int>& basis() { return basis_; }
  std::vector<bool>& allowed() { return allowed_; }
  int pivots() const { return pivots_; }

  void Pivot(int r, int c) {
    double* pr = &t_[static_cast<std::size_t>(r) * width_];
    const double inv = 1.0 / pr[c];
    for (int j = 0; j < width_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      Eliminate(&t_[static_cast<std::size_t>(i) * width_], pr, c);
    }
    Eliminate(phase1_.data(), pr, c);
    Eliminate(phase2_.data(), pr, c);
    basis_[r] = c;
    ++pivots_;
  }

  void EraseRow(int r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r) * width_,
             t_.begin() + static_cast<std::ptrdiff_t>(r + 1) * width_);
    basis_.erase(basis_.begin() + r);
    --m_;
  }

  // Runs simplex iterations on `cost`. Returns false when unbounded.
  bool Optimize(std::vector<double>& cost) {
    const long limit = 50000L + 200L * (static_cast<long>(m_) + cols());
    int degenerate_run = 0;
    std::vector<bool> basic(cols(), false);
    for (long iter = 0;; ++iter) {
      Require(iter < limit, ErrorCode::kGuard, "simplex iteration limit reached");
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      std::fill(basic.begin(), basic.end(), false);
      for (int b : basis_) basic[b] = true;
      int enter = -1;
      double best = -kCostTol;
      for (int j = 0; j < cols(); ++j) {
        if (!allowed_[j] || basic[j]) continue;
        if (cost[j] < best) {
          enter = j;
          if (bland) break;
          best = cost[j];
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double q = std::max(rhs(i), 0.0) / a;
        if (leave < 0 || q < ratio - 1e-12) {
          leave = i;
          ratio = q;
        } else if (q <= ratio + 1e-12) {
          // Ties: Bland takes the smallest basic index, otherwise the larger pivot.
          const bool take = bland ? basis_[i] < basis_[leave] : a > at(leave, enter);
          if (take) {
            leave = i;
            ratio = std::min(ratio, q);
          }
        }
      }
      if (leave < 0) return false;
      degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
    }
  }

 private:
  void Eliminate(double* row, const double* pivot_row, int c) const {
    const double f = row[c];
    if (f == 0.0) return;
    for (int j = 0; j < width_; ++j) row[j] -= f * pivot_row[j];
    row[c] = 0.0;
  }

  int m_;
  int width_;
  std::vector<double> t_;
  std::vector<double> phase1_;
  std::vector<double> phase2_;
  std::vector<int> basis_;
  std::vector<bool> allowed_;
  int pivots_ = 0;
};

struct StdRow {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
  bool equality = false;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& lp) {
  lp.Validate();
  const int n = lp.num_vars();
  LpSolution out;

  std::vector<VarMap> vars(n);
  std::vector<StdRow> rows;
  int ncols = 0;
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (lo > hi) return out;
    VarMap& v = vars[j];
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.col = ncols++;
      if (std::isfinite(hi)) rows.push_back({{{v.col, 1.0}}, hi - lo, false});
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.sign = -1.0;
      v.col = ncols++;
    } else {
      v.col = ncols++;
      v.col2 = ncols++;
    }
  }
  std::vector<double> cost(ncols, 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    cost[v.col] += v.sign * lp.objective[j];
    if (v.col2 >= 0) cost[v.col2] -= lp.objective[j];
  }
  auto add_row = [&](std::span<const double> coeffs, double rhs, bool equality) {
    StdRow row;
    row.equality = equality;
    row.rhs = rhs;
    for (int j = 0; j < n; ++j) {
      const double a = coeffs[j];
      if (a == 0.0) continue;
      const VarMap& v = vars[j];
      row.rhs -= a * v.offset;
      row.terms.emplace_back(v.col, a * v.sign);
      if (v.col2 >= 0) row.terms.emplace_back(v.col2, -a);
    }
    rows.push_back(std::move(row));
  };
  const int first_ineq_row = static_cast<int>(rows.size());
  for (int r = 0; r < lp.a_ineq.rows(); ++r) add_row(lp.a_ineq.row(r), lp.b_ineq[r], false);
  const int first_eq_row = static_cast<int>(rows.size());
  for (int r = 0; r < lp.a_eq.rows(); ++r) add_row(lp.a_eq.row(r), lp.b_eq[r], true);

  const int m = static_cast<int>(rows.size());
  int slack_count = 0;
  int art_count = 0;
  for (const StdRow& row : rows) {
    if (!row.equality) ++slack_count;
    if (row.equality || row.rhs < 0.0) ++art_count;
  }
  const int first_slack = ncols;
  const int first_art = ncols + slack_count;
  const int total = first_art + art_count;

  Tableau tab(m, total);
  int next_slack = first_slack;
  int next_art = first_art;
  // Column holding a multiple of e_i, and the factor turning its reduced cost
  // into the multiplier of the unflipped row.
  std::vector<int> unit_col(m);
  std::vector<double> unit_factor(m);
  for (int i = 0; i < m; ++i) {
    const StdRow& row = rows[i];
    const double s = row.rhs < 0.0 ? -1.0 : 1.0;
    for (const auto& [c, a] : row.terms) tab.at(i, c) += s * a;
    tab.rhs(i) = s * row.rhs;
    int basic = -1;
    if (!row.equality) {
      tab.at(i, next_slack) = s;
      unit_col[i] = next_slack;
      unit_factor[i] = -1.0;
      if (s > 0.0) basic = next_slack;
      ++next_slack;
    }
    if (basic < 0) {
      if (row.equality) {
        unit_col[i] = next_art;
        unit_factor[i] = -s;
      }
      basic = next_art++;
      tab.at(i, basic) = 1.0;
      // Phase-1 reduced costs: minus the sum of artificial rows.
      for (int c = 0; c < first_art; ++c) tab.phase1()[c] -= tab.at(i, c);
      tab.phase1()[total] -= tab.rhs(i);
    }
    tab.basis()[i] = basic;
  }
  for (int c = 0; c < ncols; ++c) tab.phase2()[c] = cost[c];

  double scale = 1.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(tab.rhs(i)));

  if (art_count > 0) {
    tab.Optimize(tab.phase1());
    if (-tab.phase1()[total] > kFeasTol * scale) {
      out.pivots = tab.pivots();
      return out;
    }
    // Pivot remaining zero-level artificials out, dropping redundant rows.
    for (int i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[i] < first_art) continue;
      int best = -1;
      double best_abs = kPivotTol;
      for (int c = 0; c < first_art; ++c) {
        const double a = std::abs(tab.at(i, c));
        if (a > best_abs) {
          best = c;
          best_abs = a;
        }
      }
      if (best >= 0) {
        tab.Pivot(i, best);
      } else {
        tab.EraseRow(i);
      }
    }
    for (int c = first_art; c < total; ++c) tab.allowed()[c] = false;
  }

  if (!tab.Optimize(tab.phase2())) {
    out.status = LpStatus::kUnbounded;
    out.pivots = tab.pivots();
    return out;
  }

  std::vector<double> p(total, 0.0);
  for (int i = 0; i < tab.rows(); ++i) p[tab.basis()[i]] = std::max(tab.rhs(i), 0.0);
  out.x.assign(n, 0.0);
  double value = 0.0;
  for (int j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    double x = v.offset + v.sign * p[v.col];
    if (v.col2 >= 0) x -= p[v.col2];
    out.x[j] = x;
    value += lp.objective[j] * x;
  }
  out.dual_ineq.resize(static_cast<std::size_t>(lp.a_ineq.rows()));
  for (int r = 0; r < lp.a_ineq.rows(); ++r) {
    const int i = first_ineq_row + r;
    out.dual_ineq[r] = unit_factor[i] * tab.phase2()[unit_col[i]];
  }
  out.dual_eq.resize(static_cast<std::size_t>(lp.a_eq.rows()));
  for (int r = 0; r < lp.a_eq.rows(); ++r) {
    const int i = first_eq_row + r;
    out.dual_eq[r] = unit_factor[i] * tab.phase2()[unit_col[i]];
  }
  out.status = LpStatus::kOptimal;
  out.objective_value = value;
  out.pivots = tab.pivots();
  return out;
}

}  // namespace valgame
