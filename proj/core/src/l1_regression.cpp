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

#include "valgame/l1_regression.hpp"

#include <cmath>
#include <string>

#include "valgame/error.hpp"

namespace valgame {

L1Fit L1Regression(const DenseMatrix& x, std::span<const double> y) {
  const int m = x.rows();
  const int k = x.cols();
  Require(m >= 1 && k >= 1, ErrorCode::kInvalidArgument, "l1 regression needs m, k >= 1");
  Require(static_cast<int>(y.size()) == m, ErrorCode::kInvalidArgument,
          "target length " + std::to_string(y.size()) + " != row count " + std::to_string(m));

  // Columns: w (free), p, q.
  LinearProgram lp(k + 2 * m);
  for (int j = 0; j < k; ++j) lp.SetFree(j);
  for (int t = 0; t < 2 * m; ++t) lp.objective[k + t] = 1.0;
  lp.a_eq.Reserve(m);
  std::vector<double> row(static_cast<std::size_t>(k + 2 * m), 0.0);
  for (int t = 0; t < m; ++t) {
    std::fill(row.begin(), row.end(), 0.0);
    for (int j = 0; j < k; ++j) row[j] = x(t, j);
    row[k + t] = 1.0;
    row[k + m + t] = -1.0;
    lp.AddEquality(row, y[t]);
  }

  const LpSolution sol = SolveLp(lp);
  L1Fit fit;
  fit.status = sol.status;
  if (sol.status != LpStatus::kOptimal) return fit;
  fit.coefficients.assign(sol.x.begin(), sol.x.begin() + k);
  for (int t = 0; t < m; ++t) {
    double pred = 0.0;
    for (int j = 0; j < k; ++j) pred += x(t, j) * fit.coefficients[j];
    fit.l1_cost += std::abs(pred - y[t]);
  }
  return fit;
}

}  // namespace valgame
