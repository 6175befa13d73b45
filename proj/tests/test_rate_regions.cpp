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

#include <algorithm>
#include <set>

#include "pcrs/rate_regions.hpp"

using namespace pcrs;

namespace {

LayerSet parse_layers(std::initializer_list<const char*> names) {
  LayerSet s;
  for (const char* n : names) {
    const std::size_t cell = static_cast<std::size_t>(n[0] - '1');
    s = s | LayerSet::of({cell, n[1] == 'a' ? Layer::a : Layer::b});
  }
  return s;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> as_set(const RegionPolytope& r) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const LinearConstraint& c : r.constraints) out.insert({c.decoded.bits(), c.conditioned.bits()});
  return out;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> expected(
    LayerSet omega, std::initializer_list<std::initializer_list<const char*>> kept) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> out;
  for (auto d : kept) {
    const LayerSet D = parse_layers(d);
    out.insert({D.bits(), omega.minus(D).bits()});
  }
  return out;
}

}  // namespace

TEST_CASE("SND decode sets") {
  const std::vector<CellSet> two = enumerate_snd_sets(0, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == CellSet::single(0));
  CHECK(two[1] == CellSet::all(2));
  CHECK(enumerate_snd_sets(0, 3).size() == 4);
  CHECK(enumerate_snd_sets(3, 7).size() == 64);
  for (const CellSet s : enumerate_snd_sets(2, 5)) CHECK(s.contains(2));
  CHECK_THROWS_AS(enumerate_snd_sets(2, 2), std::invalid_argument);
}

TEST_CASE("MAC polytope constraint counts") {
  CHECK(build_mac_polytope(0, CellSet::single(0)).omegas.size() == 1);
  CHECK(build_mac_polytope(1, CellSet::all(3)).omegas.size() == 7);
}

TEST_CASE("RS decode sets match the three-cell list") {
  const std::vector<DecodeSet> sets = enumerate_rs_sets(0, 3);
  REQUIRE(sets.size() == 9);
  const std::vector<LayerSet> paper{
      parse_layers({"1a", "1b"}),
      parse_layers({"1a", "1b", "2b"}),
      parse_layers({"1a", "1b", "3b"}),
      parse_layers({"1a", "1b", "2a", "2b"}),
      parse_layers({"1a", "1b", "3a", "3b"}),
      parse_layers({"1a", "1b", "2b", "3b"}),
      parse_layers({"1a", "1b", "2a", "2b", "3b"}),
      parse_layers({"1a", "1b", "2b", "3a", "3b"}),
      parse_layers({"1a", "1b", "2a", "2b", "3a", "3b"}),
  };
  std::set<std::uint32_t> got;
  for (const DecodeSet& d : sets) got.insert(d.layers.bits());
  std::set<std::uint32_t> want;
  for (LayerSet s : paper) want.insert(s.bits());
  CHECK(got == want);

  CHECK(enumerate_rs_sets(0, 2).size() == 3);
  CHECK(enumerate_rs_sets(2, 4).size() == 27);
}

TEST_CASE("RS sub-family") {
  const std::vector<DecodeSet> seven = enumerate_rs_sub_sets(0, 7);
  CHECK(seven.size() == 7);
  const std::vector<DecodeSet> full = enumerate_rs_sets(0, 7);
  for (const DecodeSet& d : seven) CHECK(std::find(full.begin(), full.end(), d) != full.end());
  // With two cells the single-interferer and all-interferer entries coincide.
  const std::vector<DecodeSet> two = enumerate_rs_sub_sets(0, 2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].layers == parse_layers({"1a", "1b", "2b"}));
}

TEST_CASE("modified MAC golden lists for two cells") {
  SUBCASE("own pair only") {
    const LayerSet omega = parse_layers({"1a", "1b"});
    CHECK(as_set(build_modified_mac_polytope({0, omega})) == expected(omega, {{"1a"}, {"1a", "1b"}}));
  }
  SUBCASE("own pair and inner layer of cell 2") {
    const LayerSet omega = parse_layers({"1a", "1b", "2b"});
    CHECK(as_set(build_modified_mac_polytope({0, omega})) ==
          expected(omega, {{"1a"}, {"1a", "1b"}, {"1a", "2b"}, {"1a", "1b", "2b"}}));
  }
  SUBCASE("all layers") {
    const LayerSet omega = LayerSet::all(2);
    CHECK(as_set(build_modified_mac_polytope({0, omega})) ==
          expected(omega, {{"1a"},
                           {"1a", "1b"},
                           {"1a", "2a"},
                           {"1a", "1b", "2a"},
                           {"1a", "2a", "2b"},
                           {"1a", "1b", "2a", "2b"}}));
  }
  CHECK_THROWS_AS(modified_mac_subsets({0, parse_layers({"1a", "2b"})}), std::invalid_argument);
}

TEST_CASE("network polytope assembly") {
  const RegionPolytope tin0 = build_modified_mac_polytope({0, LayerSet::pair(0)});
  const RegionPolytope tin1 = build_modified_mac_polytope({1, LayerSet::pair(1)});
  const RegionPolytope tin2 = build_modified_mac_polytope({2, LayerSet::pair(2)});
  const std::vector<RegionPolytope> parts{tin2, tin0, tin1};
  const RegionPolytope net = assemble_network_polytope(parts);
  CHECK(net.constraints.size() == 6);
  for (std::size_t i = 1; i < net.constraints.size(); ++i) {
    CHECK(net.constraints[i - 1].receiver <= net.constraints[i].receiver);
  }
  const RegionPolytope full0 = build_modified_mac_polytope({0, LayerSet::all(2)});
  const RegionPolytope mid1 = build_modified_mac_polytope({1, parse_layers({"2a", "2b", "1b"})});
  const std::vector<RegionPolytope> pair{full0, mid1};
  CHECK(assemble_network_polytope(pair).constraints.size() == 10);
}

TEST_CASE("constraint coefficients and dump format") {
  const RegionPolytope r = build_modified_mac_polytope({0, parse_layers({"1a", "1b", "2b"})});
  const std::string text = dump_region(r, 2);
  CHECK(text.find("recv=1 D={1a,2b} C={1b} coeffs=[1,0,0,1]") != std::string::npos);
  CHECK(text.find("recv=1 D={1a,1b,2b} C={} coeffs=[1,1,0,1]") != std::string::npos);
  const LinearConstraint c{0, parse_layers({"1a", "2a"}), LayerSet{}};
  CHECK(c.coeffs(2) == std::vector<int>{1, 0, 1, 0});
}

TEST_CASE("RS sub-family entries contain the own pair and only inner interferer layers") {
  for (const DecodeSet& d : enumerate_rs_sub_sets(2, 5)) {
    CHECK(LayerSet::pair(2).subset_of(d.layers));
    for (std::size_t j = 0; j < 5; ++j) {
      if (j != 2) CHECK_FALSE(d.layers.has_outer(j));
    }
  }
}
