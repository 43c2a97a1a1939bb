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

#ifndef VALGAME_L1_REGRESSION_HPP_
#define VALGAME_L1_REGRESSION_HPP_

#include <span>
#include <vector>

#include "valgame/lp.hpp"

namespace valgame {

struct L1Fit {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> coefficients;
  double l1_cost = 0.0;  // sum_t |X_t w - y_t|, recomputed from w
};

// Least absolute deviations: min_w sum_t |X_t w - y_t| through the LP
//   X w + p - q = y,  p, q >= 0,  minimize sum(p + q).
L1Fit L1Regression(const DenseMatrix& x, std::span<const double> y);

}  // namespace valgame

#endif  // VALGAME_L1_REGRESSION_HPP_
