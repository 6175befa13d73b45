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

// Serial reference vs OpenMP kernels: Monte Carlo gain tables and the f_mu
// branch-and-bound search. The argument selects parallel (1) or serial (0).

#include <benchmark/benchmark.h>

#include "pcrs/channel.hpp"
#include "pcrs/geometry.hpp"
#include "pcrs/harness.hpp"
#include "pcrs/link_bounds.hpp"
#include "pcrs/symrate.hpp"

namespace {

using namespace pcrs;

struct Scenario {
  FadingTensor beta;
  LinkTensor angles;
};

Scenario make_scenario(std::size_t L, std::size_t K) {
  const HexLayout layout = build_hex_layout(L, 400.0);
  Rng rng(derive_seed(7, {L, K}));
  const UserDrop drop = place_users(layout, K, 35.0, rng);
  Rng shadow(1);
  return {large_scale_fading(layout, drop, 3.5, {}, 0.0, shadow), link_angles(layout, drop)};
}

void BM_GainTablesMc(benchmark::State& state) {
  const Scenario s = make_scenario(3, 8);
  const LinkSet links(s.beta, s.angles, {CorrelationKind::exponential, 0.4});
  McOptions opts;
  opts.num_samples = 64;
  opts.parallel = state.range(0) != 0;
  const double rho_dl = rho_from_power(40.0, 8, -101.0);
  const double rho_p = rho_p_from_power(0.2, 8, -101.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gain_tables_mc(links, {}, rho_p, rho_dl, 128, opts));
  }
}
BENCHMARK(BM_GainTablesMc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FMu(benchmark::State& state) {
  const Scenario s = make_scenario(7, 15);
  const double rho_dl = rho_from_power(40.0, 15, -101.0);
  const double rho_p = rho_p_from_power(0.2, 15, -101.0);
  const GainTable table = gain_table_closed_zf(s.beta, rho_p, rho_dl, 1024, 0);
  const RsFamily family = make_rs_family(7, RsFamilyKind::sub);
  FmuOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_mu(table, 0.3, family, opts));
  }
}
BENCHMARK(BM_FMu)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
