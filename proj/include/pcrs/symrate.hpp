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

#ifndef PCRS_SYMRATE_HPP
#define PCRS_SYMRATE_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcrs/link_bounds.hpp"
#include "pcrs/lp.hpp"
#include "pcrs/rate_regions.hpp"

namespace pcrs {

enum class Scheme { tin, sd, snd, rs };

std::string_view scheme_name(Scheme s);
/// Inverse of scheme_name ("TIN", "SD", "SND", "RS"); throws std::invalid_argument.
Scheme parse_scheme(std::string_view name);

struct SymRateReport {
  Scheme scheme = Scheme::tin;
  double t_star = 0.0;
  // Mixed-radix index of the winning decode-set tuple, receiver 0 most
  // significant (per-receiver index into the scheme's family).
  std::uint64_t winning_combo = 0;
  // Power split of the winning RS point; NaN for unsplit schemes.
  double winning_mu = std::numeric_limits<double>::quiet_NaN();
  // Unsplit schemes: per-cell rates R_1..R_L. RS: [R_1a, R_1b, ..., R_La, R_Lb].
  std::vector<double> rates;
};

inline constexpr double kCompareSlack = 1e-8;

/// Largest equal rate inside one MAC polytope: min over omega of
/// bound(omega) / |omega|.
double mac_equal_rate(const MacPolytope& mac, const GainTable& table);

SymRateReport max_sym_tin(const GainTable& table);
SymRateReport max_sym_sd(const GainTable& table);
/// Equal-rate decomposition: min over receivers of the best decode set.
SymRateReport max_sym_snd(const GainTable& table);
/// Test oracle: max-min LP over every tuple of per-receiver decode sets.
/// Throws std::invalid_argument for more than three cells.
SymRateReport max_sym_snd_product(const GainTable& table);

enum class RsFamilyKind { sub, full };

// Per-receiver lists of modified MAC polytopes (one per decode set).
struct RsFamily {
  std::size_t num_cells = 0;
  RsFamilyKind kind = RsFamilyKind::sub;
  std::vector<std::vector<RegionPolytope>> per_receiver;

  std::uint64_t num_combos() const;
};

RsFamily make_rs_family(std::size_t num_cells, RsFamilyKind kind);

struct FmuOptions {
  bool prune = true;
  bool parallel = true;
  // Known achievable value; combos that cannot beat it may be skipped.
  double floor = -std::numeric_limits<double>::infinity();
};

struct FmuResult {
  bool found = false;  // false when nothing reached the floor
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t combo = 0;
  std::vector<double> rates;
  std::uint64_t lp_solves = 0;
};

/// Max over combos of the stacked max-min LP at power split mu. With pruning,
/// a depth-first branch-and-bound over receivers uses relaxations with a
/// subset of receivers as admissible upper bounds; the value and the winning
/// combo (ties go to the smaller index) are the same as without pruning.
FmuResult f_mu(const GainTable& table, double mu, const RsFamily& family, const FmuOptions& options = {});

/// Serial reference: solves every combo in index order.
FmuResult f_mu_bruteforce(const GainTable& table, double mu, const RsFamily& family);

/// Max-min LP for one explicit combo (family index per receiver).
LpResult solve_combo_lp(const GainTable& table, double mu, const RsFamily& family,
                        std::span<const std::size_t> choice);

/// {0, step, 2 step, ..., 1}; the last point is exactly 1.
std::vector<double> mu_grid(double step);

/// max{t_snd, max over the grid of f_mu}. winning_mu is the grid point that
/// maximizes f_mu (the line-search optimum) even when SND is not beaten; in
/// that case the rates are the SND rates placed on the inner layers. Setting
/// options.floor to t_snd skips work on combos that cannot beat SND, at the
/// cost of reporting mu = 0 when nothing beats it.
SymRateReport rs_lower_bound(const GainTable& table, std::span<const double> grid, const SymRateReport& snd,
                             const RsFamily& family, const FmuOptions& options = {});

SymRateReport rs_lower_bound_avgmu(const GainTable& table, double avg_mu, const SymRateReport& snd,
                                   const RsFamily& family, const FmuOptions& options = {});

// Mean winning mu per scenario key, clamped to [0, 1].
struct AvgMuTable {
  std::map<std::string, double> values;

  /// Throws std::out_of_range for an unknown key.
  double at(const std::string& key) const { return values.at(key); }
};

/// Throws std::invalid_argument when `training` is empty.
AvgMuTable average_mu(std::span<const std::pair<std::string, double>> training);

}  // namespace pcrs

#endif  // PCRS_SYMRATE_HPP
