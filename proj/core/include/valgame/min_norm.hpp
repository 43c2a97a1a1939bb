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

#ifndef VALGAME_MIN_NORM_HPP_
#define VALGAME_MIN_NORM_HPP_

#include <vector>

#include "valgame/lp.hpp"

namespace valgame {

struct MinNormResult {
  std::vector<double> x;
  bool converged = false;     // false: x is the last iterate, not certified
  double kkt_residual = 0.0;  // max of stationarity, primal and dual infeasibility
  double max_violation = 0.0;
  int iterations = 0;
  int active_constraints = 0;
};

// argmin |x|_2 over {A x <= b, E x = d, lower <= x <= upper}; the objective of
// `polytope` is ignored. Solved with the Goldfarb-Idnani dual active-set method,
// which starts from the unconstrained minimiser x = 0 and adds violated
// constraints one at a time, so each iterate is optimal for the constraints
// seen so far. Throws kInfeasible when the polytope is empty and
// kInvalidArgument on inconsistent equalities.
MinNormResult MinL2OnPolytope(const LinearProgram& polytope, int max_iter = 100000,
                              double tol = 1e-9);

}  // namespace valgame

#endif  // VALGAME_MIN_NORM_HPP_
