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

#include "pcrs/lp.hpp"

#include <algorithm>
#include <sstream>

namespace pcrs {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr std::size_t kDegenerateStreak = 32;

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  const std::size_t n = p.num_vars;
  const std::size_t m = p.num_rows();
  if (p.objective.size() != n || p.A.size() != m * n) throw std::invalid_argument("solve_lp: size mismatch");
  for (double v : p.b) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("solve_lp: b must be finite and nonnegative");
  }

  // Condensed tableau, (m + 1) x (n + 1). Row i < m reads
  //   basic_i = T[i][n] - sum_k T[i][k] * nonbasic_k,
  // and row m reads z = T[m][n] - sum_k T[m][k] * nonbasic_k.
  // Variables 0..n-1 are structural, n..n+m-1 are slacks.
  const std::size_t w = n + 1;
  std::vector<double> T((m + 1) * w, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy_n(p.A.data() + i * n, n, T.data() + i * w);
    T[i * w + n] = p.b[i];
  }
  for (std::size_t k = 0; k < n; ++k) T[m * w + k] = -p.objective[k];

  std::vector<std::size_t> nonbasic(n), basic(m);
  for (std::size_t k = 0; k < n; ++k) nonbasic[k] = k;
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;

  const std::size_t max_iter = 50 * (m + n) + 100;
  std::size_t iter = 0;
  std::size_t degenerate = 0;
  double* obj = T.data() + m * w;
  for (;; ++iter) {
    if (iter >= max_iter) {
      std::ostringstream os;
      os << "solve_lp: iteration limit reached (" << m << " rows, " << n << " vars)";
      throw SolverError(os.str());
    }
    const bool bland = degenerate >= kDegenerateStreak;
    std::size_t s = n;
    double best = -kCostTol;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = obj[k];
      if (d >= -kCostTol) continue;
      if (bland) {
        if (s == n || nonbasic[k] < nonbasic[s]) s = k;
      } else if (d < best || (d == best && nonbasic[k] < nonbasic[s])) {
        best = d;
        s = k;
      }
    }
    if (s == n) break;  // optimal

    std::size_t r = m;
    double ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = T[i * w + s];
      if (a <= kPivotTol) continue;
      const double q = std::max(0.0, T[i * w + n]) / a;
      if (r == m || q < ratio || (q == ratio && basic[i] < basic[r])) {
        r = i;
        ratio = q;
      }
    }
    if (r == m) {
      std::ostringstream os;
      os << "solve_lp: unbounded in variable " << nonbasic[s];
      throw SolverError(os.str());
    }
    degenerate = ratio == 0.0 ? degenerate + 1 : 0;

    // Pivot on (r, s).
    double* row_r = T.data() + r * w;
    const double piv = row_r[s];
    const double inv = 1.0 / piv;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k != s) row_r[k] *= inv;
    }
    row_r[s] = inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r) continue;
      double* row_i = T.data() + i * w;
      const double f = row_i[s];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k <= n; ++k) {
        if (k != s) row_i[k] -= f * row_r[k];
      }
      row_i[s] = -f * inv;
    }
    std::swap(basic[r], nonbasic[s]);
  }

  LpResult res;
  res.iterations = iter;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basic[i] < n) res.x[basic[i]] = std::max(0.0, T[i * w + n]);
  }
  res.value = 0.0;
  for (std::size_t k = 0; k < n; ++k) res.value += p.objective[k] * res.x[k];

  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < n; ++k) lhs += p.A[i * n + k] * res.x[k];
    residual = std::max(residual, lhs - p.b[i]);
  }
  if (residual > kLpFeasibilityTol) {
    std::ostringstream os;
    os << "solve_lp: feasibility residual " << residual << " exceeds tolerance (" << m << " rows, " << n
       << " vars, " << iter << " pivots)";
    throw SolverError(os.str());
  }
  return res;
}

}  // namespace pcrs
