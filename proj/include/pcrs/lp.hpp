// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PCRS_LP_HPP
#define PCRS_LP_HPP

#include <cstddef>
#include <vector>

#include "pcrs/common.hpp"

namespace pcrs {

// maximize c^T x  subject to  A x <= b,  x >= 0,  with b >= 0 so the origin
// is feasible. A is dense row-major (rows x num_vars).
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<double> A;
  std::vector<double> b;

  explicit LpProblem(std::size_t n = 0) : num_vars(n), objective(n, 0.0) {}

  std::size_t num_rows() const { return b.size(); }
  /// Appends a row and returns a pointer to its coefficients (zeroed).
  double* add_row(double rhs) {
    b.push_back(rhs);
    A.resize(A.size() + num_vars, 0.0);
    return A.data() + A.size() - num_vars;
  }
};

struct LpResult {
  double value = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

inline constexpr double kLpFeasibilityTol = 1e-9;

/// Dense primal simplex on a condensed tableau. Dantzig entering rule with a
/// switch to Bland's rule after a run of degenerate pivots; ratio-test ties go
/// to the lowest variable index, so identical problems give identical
/// answers. Throws std::invalid_argument for malformed input (negative b,
/// size mismatch) and SolverError when the problem is unbounded, the
/// iteration limit is hit, or the final residual exceeds 1e-9.
LpResult solve_lp(const LpProblem& problem);

}  // namespace pcrs

#endif  // PCRS_LP_HPP
