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


#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "support/oracles.hpp"
#include "valgame/error.hpp"
#include "valgame/l1_regression.hpp"
#include "valgame/lp.hpp"
#include "valgame/min_norm.hpp"
#include "valgame/rng.hpp"

namespace valgame {
namespace {

TEST(LpTest, SingleLowerBound) {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.AddInequality(std::vector<double>{-1.0}, -3.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 3.0, 1e-12);
}

TEST(LpTest, SimplexCorner) {
  LinearProgram lp(2);
  lp.objective = {-1.0, -1.0};
  lp.AddInequality(std::vector<double>{1.0, 1.0}, 1.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, -1.0, 1e-12);
}

TEST(LpTest, Unbounded) {
  LinearProgram lp(2);
  lp.objective = {-1.0, 0.0};
  lp.AddInequality(std::vector<double>{0.0, 1.0}, 1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kUnbounded);
}

TEST(LpTest, Infeasible) {
  LinearProgram lp(1);
  lp.objective = {1.0};
  lp.AddInequality(std::vector<double>{1.0}, -1.0);
  EXPECT_EQ(SolveLp(lp).status, LpStatus::kInfeasible);
  LinearProgram crossed(1);
  crossed.lower = {2.0};
  crossed.upper = {1.0};
  EXPECT_EQ(SolveLp(crossed).status, LpStatus::kInfeasible);
}

TEST(LpTest, FreeAndBoxedVariables) {
  // min x - y, x free with x >= -2 from a row, y in [1, 4].
  LinearProgram lp(2);
  lp.objective = {1.0, -1.0};
  lp.SetFree(0);
  lp.lower[1] = 1.0;
  lp.upper[1] = 4.0;
  lp.AddInequality(std::vector<double>{-1.0, 0.0}, 2.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], -2.0, 1e-12);
  EXPECT_NEAR(s.x[1], 4.0, 1e-12);
}

TEST(LpTest, UpperOnlyBoundIsFlipped) {
  LinearProgram lp(1);
  lp.objective = {-1.0};
  lp.lower = {-kInf};
  lp.upper = {-0.5};
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], -0.5, 1e-12);
}

TEST(LpTest, RedundantEqualities) {
  LinearProgram lp(3);
  lp.objective = {1.0, 2.0, 3.0};
  lp.AddEquality(std::vector<double>{1.0, 1.0, 1.0}, 1.0);
  lp.AddEquality(std::vector<double>{2.0, 2.0, 2.0}, 2.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value, 1.0, 1e-12);
}

TEST(LpTest, DualsMatchFiniteDifferences) {
  SeededRng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    LinearProgram lp(3);
    for (double& c : lp.objective) c = rng.Uniform(0.1, 1.0);
    for (int r = 0; r < 3; ++r) {
      std::vector<double> row(3);
      for (double& v : row) v = -rng.Uniform(0.2, 1.0);
      lp.AddInequality(row, -rng.Uniform(0.5, 1.0));
    }
    lp.AddEquality(std::vector<double>{1.0, -1.0, 0.5}, rng.Uniform(-0.2, 0.2));
    const LpSolution base = SolveLp(lp);
    if (base.status != LpStatus::kOptimal) continue;
    const double h = 1e-6;
    for (int r = 0; r < 3; ++r) {
      LinearProgram bumped = lp;
      bumped.b_ineq[r] += h;
      const LpSolution s = SolveLp(bumped);
      ASSERT_EQ(s.status, LpStatus::kOptimal);
      EXPECT_NEAR((s.objective_value - base.objective_value) / h, base.dual_ineq[r], 1e-4);
      EXPECT_LE(base.dual_ineq[r], 1e-12);
    }
    LinearProgram bumped = lp;
    bumped.b_eq[0] += h;
    const LpSolution s = SolveLp(bumped);
    if (s.status == LpStatus::kOptimal) {
      EXPECT_NEAR((s.objective_value - base.objective_value) / h, base.dual_eq[0], 1e-4);
    }
  }
}

TEST(LpTest, RandomSmallLpsMatchVertexEnumeration) {
  SeededRng rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    testing::VertexLp ref;
    LinearProgram lp(5);
    for (int j = 0; j < 5; ++j) ref.c.push_back(lp.objective[j] = rng.Uniform(-1.0, 1.0));
    for (int r = 0; r < 8; ++r) {
      std::vector<double> row(5);
      for (double& v : row) v = rng.Uniform(-1.0, 1.0);
      const double rhs = rng.Uniform(0.0, 1.0);
      ref.a.push_back(row);
      ref.b.push_back(rhs);
      lp.AddInequality(row, rhs);
    }
    for (int j = 0; j < 5; ++j) {
      std::vector<double> row(5, 0.0);
      row[j] = 1.0;
      ref.a.push_back(row);
      ref.b.push_back(2.0);
      lp.AddInequality(row, 2.0);
    }
    const LpSolution s = SolveLp(lp);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_NEAR(s.objective_value, *testing::VertexEnumerationOptimum(ref), 1e-7);
  }
}

TEST(LpTest, DegenerateProblemTerminates) {
  // Many constraints tight at the origin.
  LinearProgram lp(4);
  lp.objective = {-1.0, -1.0, -1.0, -1.0};
  SeededRng rng(2);
  for (int r = 0; r < 30; ++r) {
    std::vector<double> row(4);
    for (double& v : row) v = rng.Uniform(-1.0, 1.0);
    lp.AddInequality(row, 0.0);
  }
  lp.AddInequality(std::vector<double>{1.0, 1.0, 1.0, 1.0}, 1.0);
  const LpSolution s = SolveLp(lp);
  EXPECT_NE(s.status, LpStatus::kUnbounded);
}

TEST(LpTest, RejectsBadShapesAndNans) {
  LinearProgram lp(2);
  EXPECT_THROW(lp.AddInequality(std::vector<double>{1.0}, 0.0), Error);
  lp.objective[0] = std::nan("");
  EXPECT_THROW(SolveLp(lp), Error);
}

TEST(L1Test, IdentityInterpolates) {
  DenseMatrix x(3, 3);
  for (int i = 0; i < 3; ++i) x(i, i) = 1.0;
  const std::vector<double> y{0.5, -2.0, 7.0};
  const L1Fit fit = L1Regression(x, y);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(fit.coefficients[i], y[i], 1e-12);
  EXPECT_NEAR(fit.l1_cost, 0.0, 1e-12);
}

TEST(L1Test, RealizableTargetHasZeroResidual) {
  SeededRng rng(3);
  DenseMatrix x(12, 3);
  std::vector<double> y(12);
  const double w[3] = {0.7, -1.2, 0.4};
  for (int r = 0; r < 12; ++r) {
    for (int j = 0; j < 3; ++j) {
      x(r, j) = rng.Uniform(-1.0, 1.0);
      y[r] += w[j] * x(r, j);
    }
  }
  const L1Fit fit = L1Regression(x, y);
  EXPECT_NEAR(fit.l1_cost, 0.0, 1e-9);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(fit.coefficients[j], w[j], 1e-9);
}

TEST(L1Test, InterceptFitIsTheMedian) {
  DenseMatrix x(3, 1);
  for (int r = 0; r < 3; ++r) x(r, 0) = 1.0;
  const std::vector<double> y{0.0, 1.0, 10.0};
  const L1Fit fit = L1Regression(x, y);
  EXPECT_NEAR(fit.coefficients[0], 1.0, 1e-12);
  EXPECT_NEAR(fit.l1_cost, 10.0, 1e-12);
  // Grid scan of the cost confirms no better w.
  for (double w = -2.0; w <= 12.0; w += 0.01) {
    EXPECT_GE(std::abs(w) + std::abs(w - 1.0) + std::abs(w - 10.0), fit.l1_cost - 1e-12);
  }
}

TEST(L1Test, MatchesBruteForceOnNoisyData) {
  SeededRng rng(8);
  DenseMatrix x(9, 3);
  std::vector<std::vector<double>> rows;
  std::vector<double> y(9);
  for (int r = 0; r < 9; ++r) {
    std::vector<double> row;
    for (int j = 0; j < 3; ++j) row.push_back(x(r, j) = rng.Uniform(-1.0, 1.0));
    rows.push_back(row);
    y[r] = rng.Normal();
  }
  EXPECT_NEAR(L1Regression(x, y).l1_cost, testing::BruteForceL1Optimum(rows, y), 1e-9);
}

TEST(MinNormTest, Singleton) {
  LinearProgram p(1);
  p.SetFree(0);
  p.AddEquality(std::vector<double>{1.0}, 5.0);
  const MinNormResult r = MinL2OnPolytope(p);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 5.0, 1e-12);
}

TEST(MinNormTest, HyperplaneBySymmetry) {
  LinearProgram p(2);
  p.SetFree(0);
  p.SetFree(1);
  p.AddEquality(std::vector<double>{1.0, 1.0}, 1.0);
  const MinNormResult r = MinL2OnPolytope(p);
  EXPECT_NEAR(r.x[0], 0.5, 1e-12);
  EXPECT_NEAR(r.x[1], 0.5, 1e-12);
}

TEST(MinNormTest, ActiveFace) {
  LinearProgram p(2);
  p.SetFree(0);
  p.SetFree(1);
  p.AddEquality(std::vector<double>{1.0, 1.0}, 1.0);
  p.AddInequality(std::vector<double>{-1.0, 0.0}, -0.8);
  const MinNormResult r = MinL2OnPolytope(p);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 0.8, 1e-12);
  EXPECT_NEAR(r.x[1], 0.2, 1e-12);
  EXPECT_EQ(r.active_constraints, 2);
  // Grid search along the feasible segment.
  for (double t = 0.8; t <= 3.0; t += 0.001) {
    EXPECT_GE(t * t + (1 - t) * (1 - t), 0.68 - 1e-12);
  }
}

TEST(MinNormTest, DefaultBoundsApply) {
  // x >= 0 by default; min |x| with x0 + x1 >= 1 lands on (0.5, 0.5).
  LinearProgram p(2);
  p.AddInequality(std::vector<double>{-1.0, -1.0}, -1.0);
  const MinNormResult r = MinL2OnPolytope(p);
  EXPECT_NEAR(r.x[0], 0.5, 1e-12);
  EXPECT_NEAR(r.x[1], 0.5, 1e-12);
  EXPECT_LE(r.kkt_residual, 1e-9);
}

TEST(MinNormTest, EmptyPolytopeThrows) {
  LinearProgram p(1);
  p.SetFree(0);
  p.AddInequality(std::vector<double>{1.0}, 0.0);
  p.AddInequality(std::vector<double>{-1.0}, -1.0);
  try {
    MinL2OnPolytope(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(MinNormTest, MatchesLpFeasibilityOnManyConstraints) {
  // Least-core shaped: sum x = 1, x(S) >= v(S) - e over random S.
  SeededRng rng(21);
  const int n = 6;
  LinearProgram p(n);
  for (int j = 0; j < n; ++j) p.SetFree(j);
  p.AddEquality(std::vector<double>(n, 1.0), 1.0);
  for (int r = 0; r < 40; ++r) {
    std::vector<double> row(n, 0.0);
    int size = 0;
    for (int j = 0; j < n; ++j) {
      if (rng.Coin()) {
        row[j] = -1.0;
        ++size;
      }
    }
    p.AddInequality(row, -(size / static_cast<double>(n)) * rng.Uniform(0.5, 1.0));
  }
  const MinNormResult r = MinL2OnPolytope(p);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.max_violation, 1e-9);
  // The uniform vector is feasible here, so the minimum norm cannot exceed it.
  const double norm2 = std::inner_product(r.x.begin(), r.x.end(), r.x.begin(), 0.0);
  EXPECT_LE(norm2, 1.0 / n + 1e-12);
}

}  // namespace
}  // namespace valgame
