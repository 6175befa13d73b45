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

#include "pcrs/rate_regions.hpp"

#include <algorithm>
#include <sstream>

namespace pcrs {

namespace {

void check_receiver(std::size_t receiver, std::size_t num_cells) {
  if (num_cells < 1 || num_cells > kMaxCells) throw std::invalid_argument("rate regions: num_cells out of range");
  if (receiver >= num_cells) throw std::invalid_argument("rate regions: receiver out of range");
}

// Calls fn(sub) for every nonempty submask of `mask`, ascending.
template <class Fn>
void for_each_submask(std::uint32_t mask, Fn&& fn) {
  std::vector<std::uint32_t> subs;
  for (std::uint32_t s = mask; s != 0; s = (s - 1) & mask) subs.push_back(s);
  std::sort(subs.begin(), subs.end());
  for (std::uint32_t s : subs) fn(s);
}

}  // namespace

std::vector<CellSet> enumerate_snd_sets(std::size_t receiver, std::size_t num_cells) {
  check_receiver(receiver, num_cells);
  std::vector<CellSet> sets;
  const std::uint32_t all = CellSet::all(num_cells).bits();
  const std::uint32_t own = CellSet::single(receiver).bits();
  for (std::uint32_t s = 0; s <= all; ++s) {
    if ((s & own) && (s & ~all) == 0) sets.emplace_back(s);
  }
  return sets;
}

std::vector<double> MacPolytope::rhs(const GainTable& table) const {
  std::vector<double> out;
  out.reserve(omegas.size());
  for (CellSet w : omegas) out.push_back(bound_value(table, receiver, decode, w));
  return out;
}

MacPolytope build_mac_polytope(std::size_t receiver, CellSet decode) {
  if (!decode.contains(receiver)) throw std::invalid_argument("build_mac_polytope: receiver not in decode set");
  MacPolytope p;
  p.receiver = receiver;
  p.decode = decode;
  for_each_submask(decode.bits(), [&](std::uint32_t s) { p.omegas.emplace_back(s); });
  return p;
}

std::vector<DecodeSet> enumerate_rs_sets(std::size_t receiver, std::size_t num_cells) {
  check_receiver(receiver, num_cells);
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < num_cells; ++j) {
    if (j != receiver) others.push_back(j);
  }
  std::size_t count = 1;
  for (std::size_t n = 0; n < others.size(); ++n) count *= 3;
  std::vector<DecodeSet> sets;
  sets.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    LayerSet layers = LayerSet::pair(receiver);
    std::size_t c = code;
    for (std::size_t j : others) {
      const std::size_t digit = c % 3;
      c /= 3;
      if (digit == 1) layers = layers | LayerSet::inner(j);
      if (digit == 2) layers = layers | LayerSet::pair(j);
    }
    sets.push_back({receiver, layers});
  }
  return sets;
}

std::vector<DecodeSet> enumerate_rs_sub_sets(std::size_t receiver, std::size_t num_cells) {
  check_receiver(receiver, num_cells);
  if (num_cells < 2) throw std::invalid_argument("enumerate_rs_sub_sets: requires at least two cells");
  std::vector<DecodeSet> sets;
  const LayerSet own = LayerSet::pair(receiver);
  LayerSet all_inner;
  for (std::size_t j = 0; j < num_cells; ++j) {
    if (j == receiver) continue;
    sets.push_back({receiver, own | LayerSet::inner(j)});
    all_inner = all_inner | LayerSet::inner(j);
  }
  const DecodeSet everyone{receiver, own | all_inner};
  if (std::find(sets.begin(), sets.end(), everyone) == sets.end()) sets.push_back(everyone);
  return sets;
}

std::vector<int> LinearConstraint::coeffs(std::size_t num_cells) const {
  std::vector<int> c(2 * num_cells, 0);
  for (std::size_t bit = 0; bit < 2 * num_cells; ++bit) c[bit] = static_cast<int>((decoded.bits() >> bit) & 1u);
  return c;
}

std::vector<LayerSet> modified_mac_subsets(const DecodeSet& decode) {
  const std::size_t l = decode.receiver;
  if (l >= kMaxCells || !LayerSet::pair(l).subset_of(decode.layers)) {
    throw std::invalid_argument("modified MAC region: decode set must contain both own layers");
  }
  // Cells whose two layers are both decoded.
  std::vector<std::size_t> paired;
  for (std::size_t j = 0; j < kMaxCells; ++j) {
    if (LayerSet::pair(j).subset_of(decode.layers)) paired.push_back(j);
  }
  std::vector<LayerSet> kept;
  for_each_submask(decode.layers.bits(), [&](std::uint32_t s) {
    const LayerSet w(s);
    if (!w.has_outer(l)) return;
    for (std::size_t j : paired) {
      if (w.has_inner(j) && !w.has_outer(j)) return;
    }
    kept.push_back(w);
  });
  return kept;
}

RegionPolytope build_modified_mac_polytope(const DecodeSet& decode) {
  RegionPolytope p;
  p.combo.push_back(decode);
  for (LayerSet w : modified_mac_subsets(decode)) {
    p.constraints.push_back({decode.receiver, w, decode.layers.minus(w)});
  }
  return p;
}

RegionPolytope assemble_network_polytope(std::span<const RegionPolytope> per_receiver) {
  RegionPolytope out;
  for (const RegionPolytope& p : per_receiver) {
    out.combo.insert(out.combo.end(), p.combo.begin(), p.combo.end());
    out.constraints.insert(out.constraints.end(), p.constraints.begin(), p.constraints.end());
  }
  std::stable_sort(out.constraints.begin(), out.constraints.end(),
                   [](const LinearConstraint& a, const LinearConstraint& b) { return a.receiver < b.receiver; });
  std::stable_sort(out.combo.begin(), out.combo.end(),
                   [](const DecodeSet& a, const DecodeSet& b) { return a.receiver < b.receiver; });
  return out;
}

std::string dump_region(const RegionPolytope& region, std::size_t num_cells) {
  std::ostringstream os;
  for (const LinearConstraint& c : region.constraints) {
    os << "recv=" << c.receiver + 1 << " D=" << to_string(c.decoded) << " C=" << to_string(c.conditioned)
       << " coeffs=[";
    const std::vector<int> co = c.coeffs(num_cells);
    for (std::size_t i = 0; i < co.size(); ++i) os << (i ? "," : "") << co[i];
    os << "]\n";
  }
  return os.str();
}

}  // namespace pcrs
