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

#ifndef PCRS_LAYERS_HPP
#define PCRS_LAYERS_HPP

#include <bit>
#include <cstdint>
#include <string>

#include "pcrs/common.hpp"

namespace pcrs {

// Each message is split into an outer layer (a), carrying a fraction mu of the
// power, and an inner layer (b) carrying 1 - mu. Layer (cell, a) has bit index
// 2 * cell, layer (cell, b) has 2 * cell + 1.
enum class Layer : std::uint8_t { a = 0, b = 1 };

struct LayerId {
  std::size_t cell = 0;
  Layer layer = Layer::a;

  constexpr std::size_t bit() const { return 2 * cell + static_cast<std::size_t>(layer); }
  constexpr bool operator==(const LayerId&) const = default;
};

class LayerSet {
 public:
  constexpr LayerSet() = default;
  constexpr explicit LayerSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr LayerSet of(LayerId id) { return LayerSet(1u << id.bit()); }
  static constexpr LayerSet outer(std::size_t cell) { return of({cell, Layer::a}); }
  static constexpr LayerSet inner(std::size_t cell) { return of({cell, Layer::b}); }
  static constexpr LayerSet pair(std::size_t cell) { return outer(cell) | inner(cell); }
  static constexpr LayerSet all(std::size_t num_cells) {
    return LayerSet(num_cells >= 16 ? ~0u : ((1u << (2 * num_cells)) - 1u));
  }

  constexpr bool contains(LayerId id) const { return (bits_ >> id.bit()) & 1u; }
  constexpr bool has_outer(std::size_t cell) const { return (bits_ >> (2 * cell)) & 1u; }
  constexpr bool has_inner(std::size_t cell) const { return (bits_ >> (2 * cell + 1)) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(LayerSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(LayerSet o) const { return (bits_ & o.bits_) == 0; }
  constexpr std::uint32_t bits() const { return bits_; }

  constexpr LayerSet operator|(LayerSet o) const { return LayerSet(bits_ | o.bits_); }
  constexpr LayerSet operator&(LayerSet o) const { return LayerSet(bits_ & o.bits_); }
  constexpr LayerSet minus(LayerSet o) const { return LayerSet(bits_ & ~o.bits_); }
  constexpr bool operator==(const LayerSet&) const = default;
  constexpr auto operator<=>(const LayerSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// "{1a,1b,2b}" with 1-based cell labels, layers in bit order.
std::string to_string(LayerSet s);

}  // namespace pcrs

#endif  // PCRS_LAYERS_HPP
