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

#ifndef PCRS_RATE_REGIONS_HPP
#define PCRS_RATE_REGIONS_HPP

#include <span>
#include <string>
#include <vector>

#include "pcrs/common.hpp"
#include "pcrs/layers.hpp"
#include "pcrs/link_bounds.hpp"

namespace pcrs {

// ---- Unsplit messages (TIN / SD / SND) ------------------------------------

/// All decode sets at receiver l: every subset of cells containing l, ordered
/// by bitmask. 2^(L-1) entries.
std::vector<CellSet> enumerate_snd_sets(std::size_t receiver, std::size_t num_cells);

// MAC polytope at one receiver: sum_{j in omega} R_j <= bound_value(l, decode,
// omega) for every nonempty omega subset of decode. Coordinates outside the
// decode set are unconstrained.
struct MacPolytope {
  std::size_t receiver = 0;
  CellSet decode;
  std::vector<CellSet> omegas;

  std::vector<double> rhs(const GainTable& table) const;
};

MacPolytope build_mac_polytope(std::size_t receiver, CellSet decode);

// ---- Rate-split messages (RS) ----------------------------------------------

// Layers a receiver attempts to decode; always contains its own pair.
struct DecodeSet {
  std::size_t receiver = 0;
  LayerSet layers;

  bool operator==(const DecodeSet&) const = default;
};

/// Own pair crossed with {nothing, inner only, both layers} of every other
/// cell: 3^(L-1) sets, mixed-radix order with the lowest other cell fastest.
std::vector<DecodeSet> enumerate_rs_sets(std::size_t receiver, std::size_t num_cells);

/// Own pair alone with each single interferer's inner layer, then with all
/// interferers' inner layers; duplicates (L = 2) removed.
std::vector<DecodeSet> enumerate_rs_sub_sets(std::size_t receiver, std::size_t num_cells);

// sum over layers in `decoded` of R_layer <= layered_bound_value(receiver,
// decoded, conditioned). Stored symbolically so one enumeration serves every
// power split.
struct LinearConstraint {
  std::size_t receiver = 0;
  LayerSet decoded;
  LayerSet conditioned;

  /// 0/1 coefficients over [R_1a, R_1b, ..., R_La, R_Lb].
  std::vector<int> coeffs(std::size_t num_cells) const;
  double rhs(const LayeredGainTable& table) const {
    return layered_bound_value(table, receiver, decoded, conditioned);
  }
  bool operator==(const LinearConstraint&) const = default;
};

struct RegionPolytope {
  std::vector<LinearConstraint> constraints;
  std::vector<DecodeSet> combo;  // one entry per contributing receiver
};

/// Kept layer subsets of a modified MAC region: omega must contain the
/// receiver's own outer layer, and for every cell whose two layers are both
/// in the decode set, omega may not contain the inner layer without the outer
/// one. Ordered by bitmask. Throws std::invalid_argument if the decode set
/// lacks the receiver's own pair.
std::vector<LayerSet> modified_mac_subsets(const DecodeSet& decode);

RegionPolytope build_modified_mac_polytope(const DecodeSet& decode);

/// Receiver-major concatenation of per-receiver polytopes.
RegionPolytope assemble_network_polytope(std::span<const RegionPolytope> per_receiver);

/// One line per constraint: `recv=1 D={1a,1b} C={2b} coeffs=[1,1,0,0]`.
std::string dump_region(const RegionPolytope& region, std::size_t num_cells);

}  // namespace pcrs

#endif  // PCRS_RATE_REGIONS_HPP
