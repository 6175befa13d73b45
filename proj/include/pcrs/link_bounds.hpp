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

#ifndef PCRS_LINK_BOUNDS_HPP
#define PCRS_LINK_BOUNDS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pcrs/channel.hpp"
#include "pcrs/common.hpp"
#include "pcrs/geometry.hpp"
#include "pcrs/layers.hpp"

namespace pcrs {

enum class PrecoderKind { zf, rzf };

struct PrecoderSpec {
  PrecoderKind kind = PrecoderKind::zf;
  // RZF regularization; a non-positive value selects the default K / rho_dl.
  double delta = 0.0;
};

/// W = G (G^H G)^{-1}. Throws SingularMatrixError when G is rank deficient
/// and std::invalid_argument when G has more columns than rows.
CMatrix zf_precoder(const CMatrix& Ghat);

/// W = G (G^H G + delta I)^{-1}. Throws std::invalid_argument for delta <= 0.
CMatrix rzf_precoder(const CMatrix& Ghat, double delta);

/// Closed-form ZF normalization for one BS from the own-cell links of its K
/// users: lambda = 1 / (K (M - K)) * sum_i 1 / (sqrt(rho_p) beta_i alpha_i).
/// Throws std::invalid_argument when M <= K.
double lambda_zf_closed(std::span<const double> own_beta, std::span<const double> own_alpha, double rho_p,
                        std::uint64_t M);

/// Per-cell closed-form ZF normalization for uncorrelated channels.
std::vector<double> lambda_zf_closed(const FadingTensor& beta, double rho_p, std::uint64_t M);

/// Empirical mean of tr(W^H W) / K over precoder draws. Throws
/// std::invalid_argument on an empty list.
double normalization_lambda_mc(std::span<const CMatrix> precoders);

// Effective powers for the pilot-sharing users of one pilot index i.
// signal(l, j): received power at the user of cell l of the stream BS j sends
// to its own user i. noise_equiv(l): estimation-error interference plus unit
// noise seen by that user.
struct GainTable {
  std::size_t num_cells = 0;
  std::size_t pilot = 0;
  double rho_dl = 0.0;
  std::vector<double> lambda;
  std::vector<double> signal_power;  // row-major num_cells x num_cells, [l * L + j]
  std::vector<double> noise_equiv;

  GainTable() = default;
  explicit GainTable(std::size_t L)
      : num_cells(L), lambda(L, 0.0), signal_power(L * L, 0.0), noise_equiv(L, 1.0) {}

  double signal(std::size_t receiver, std::size_t bs) const { return signal_power[receiver * num_cells + bs]; }
  double& signal(std::size_t receiver, std::size_t bs) { return signal_power[receiver * num_cells + bs]; }
};

/// Closed-form ZF tables for uncorrelated channels, one for every pilot
/// index. Never allocates M-sized storage, so M up to 1e9 is fine.
std::vector<GainTable> gain_tables_closed_zf(const FadingTensor& beta, double rho_p, double rho_dl,
                                             std::uint64_t M);
GainTable gain_table_closed_zf(const FadingTensor& beta, double rho_p, double rho_dl, std::uint64_t M,
                               std::size_t pilot);

struct McOptions {
  std::size_t num_samples = 500;
  std::uint64_t seed = 1;
  bool parallel = true;
};

/// Monte Carlo tables (worst-case uncorrelated-noise bound) for every pilot
/// index. Samples are processed in fixed-size blocks with per-block seeded
/// generators and reduced in block order, so the result does not depend on
/// the thread count; `parallel = false` runs the same kernel serially.
std::vector<GainTable> gain_tables_mc(const LinkSet& links, const PrecoderSpec& precoder, double rho_p,
                                      double rho_dl, std::size_t M, const McOptions& options);
GainTable gain_table_mc(const LinkSet& links, const PrecoderSpec& precoder, double rho_p, double rho_dl,
                        std::size_t M, std::size_t pilot, const McOptions& options);

/// C(sum_{j in omega} P_lj / (N_l + sum_{j not in decode} P_lj)). Throws
/// std::invalid_argument unless receiver in decode and omega is a subset of
/// decode.
double bound_value(const GainTable& table, std::size_t receiver, CellSet decode, CellSet omega);

// Rate-split view of a GainTable: layer (j, a) carries mu * P and layer
// (j, b) carries (1 - mu) * P.
struct LayeredGainTable {
  const GainTable* base = nullptr;
  double mu = 0.0;

  double outer(std::size_t receiver, std::size_t bs) const { return mu * base->signal(receiver, bs); }
  double inner(std::size_t receiver, std::size_t bs) const {
    return base->signal(receiver, bs) - outer(receiver, bs);
  }
  double layer_power(std::size_t receiver, LayerId id) const {
    return id.layer == Layer::a ? outer(receiver, id.cell) : inner(receiver, id.cell);
  }
};

/// C(sum_{D} layer power / (N_l + sum_{layers outside D and C} layer power)).
/// Throws std::invalid_argument when D and C overlap.
double layered_bound_value(const LayeredGainTable& table, std::size_t receiver, LayerSet decoded,
                           LayerSet conditioned);

}  // namespace pcrs

#endif  // PCRS_LINK_BOUNDS_HPP
