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

#include <doctest.h>

#include <random>

#include "pcrs/common.hpp"
#include "pcrs/lp.hpp"

using namespace pcrs;

namespace {

// max t s.t. t <= R_i, constraint rows over (R_1, R_2); variables (t, R_1, R_2).
LpProblem maxmin_two(const std::vector<std::array<double, 3>>& rows) {
  LpProblem p(3);
  p.objective[0] = 1.0;
  for (const auto& r : rows) {
    double* a = p.add_row(r[2]);
    a[1] = r[0];
    a[2] = r[1];
  }
  for (std::size_t i = 1; i <= 2; ++i) {
    double* a = p.add_row(0.0);
    a[0] = 1.0;
    a[i] = -1.0;
  }
  return p;
}

}  // namespace

TEST_CASE("single bound") {
  LpProblem p(1);
  p.objective[0] = 1.0;
  p.add_row(3.7)[0] = 1.0;
  CHECK(solve_lp(p).value == doctest::Approx(3.7));
}

TEST_CASE("two-user max-min toy and redundant rows") {
  LpProblem p = maxmin_two({{1, 0, 2}, {0, 1, 2}, {1, 1, 3}});
  const LpResult r = solve_lp(p);
  CHECK(r.value == doctest::Approx(1.5));
  CHECK(r.x[1] >= 1.5 - 1e-9);
  CHECK(r.x[2] >= 1.5 - 1e-9);
  LpProblem q = maxmin_two({{1, 0, 2}, {0, 1, 2}, {1, 1, 3}, {1, 1, 10}, {1, 0, 5}});
  CHECK(solve_lp(q).value == doctest::Approx(1.5));
}

TEST_CASE("unbounded problem reports a solver error") {
  LpProblem p(2);
  p.objective[0] = 1.0;
  double* a = p.add_row(1.0);
  a[0] = 1.0;
  a[1] = -1.0;
  CHECK_THROWS_AS(solve_lp(p), SolverError);
}

TEST_CASE("random max-min instances against a grid search") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double c1 = u(rng), c2 = u(rng), s = u(rng) * 1.5;
    const LpResult r = solve_lp(maxmin_two({{1, 0, c1}, {0, 1, c2}, {1, 1, s}}));
    // Oracle: min(c1, c2, s / 2).
    CHECK(r.value == doctest::Approx(std::min({c1, c2, s / 2.0})).epsilon(1e-10));
  }
}

TEST_CASE("degenerate vertex terminates") {
  // Many rows active at the optimum.
  LpProblem p = maxmin_two({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}, {2, 1, 3}, {1, 2, 3}, {1, 1, 2}});
  CHECK(solve_lp(p).value == doctest::Approx(1.0));
}
