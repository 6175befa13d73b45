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

#ifndef PCRS_GEOMETRY_HPP
#define PCRS_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "pcrs/common.hpp"

namespace pcrs {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  double norm() const { return std::hypot(x, y); }
};

// Flat-top hexagons (vertices at 0, 60, ..., 300 degrees), circumradius
// `cell_radius`. Adjacent centers sit sqrt(3) * cell_radius apart along the
// 30 + 60k degree directions.
//
// The canonical 7-cell cluster carries the six translations of the cluster
// lattice (plus the zero offset) so distances are measured on a torus. Other
// cell counts take the nearest hex-lattice sites around the origin and are
// not wrapped.
struct HexLayout {
  std::size_t num_cells = 0;
  double cell_radius = 0.0;
  std::vector<Point2> bs_positions;
  std::vector<Point2> wrap_offsets;
};

// positions are cell-major: index l * users_per_cell + k.
struct UserDrop {
  std::size_t num_cells = 0;
  std::size_t users_per_cell = 0;
  std::vector<Point2> positions;
  double user_height = 1.5;
  double bs_height = 25.0;

  const Point2& at(std::size_t cell, std::size_t user) const {
    return positions[cell * users_per_cell + user];
  }
};

struct ShadowingSpec {
  double sigma_db = 0.0;
  bool enabled = false;
};

// Per-link tensor indexed (BS j, user k, cell l), stored j-major. Used for
// the large-scale fading coefficients and for the link angles.
class LinkTensor {
 public:
  LinkTensor() = default;
  LinkTensor(std::size_t num_cells, std::size_t users_per_cell, double fill = 0.0)
      : num_cells_(num_cells), users_(users_per_cell), data_(num_cells * users_per_cell * num_cells, fill) {}

  std::size_t num_cells() const { return num_cells_; }
  std::size_t users_per_cell() const { return users_; }

  double& operator()(std::size_t bs, std::size_t user, std::size_t cell) {
    return data_[(bs * users_ + user) * num_cells_ + cell];
  }
  double operator()(std::size_t bs, std::size_t user, std::size_t cell) const {
    return data_[(bs * users_ + user) * num_cells_ + cell];
  }
  const std::vector<double>& raw() const { return data_; }
  bool operator==(const LinkTensor&) const = default;

 private:
  std::size_t num_cells_ = 0;
  std::size_t users_ = 0;
  std::vector<double> data_;
};

/// Linear-scale large-scale fading beta(j, k, l) between BS j and user k of cell l.
using FadingTensor = LinkTensor;

HexLayout build_hex_layout(std::size_t num_cells, double radius);

bool inside_hexagon(Point2 center, double radius, Point2 p);

/// Horizontal displacement from BS `bs` to the closest torus image of `point`.
Point2 wrapped_offset(const HexLayout& layout, std::size_t bs, Point2 point);

double wrap_distance_3d(const HexLayout& layout, std::size_t bs, Point2 point, double user_height,
                        double bs_height);

/// Uniform drop of K users per cell, rejecting points closer than
/// `min_bs_distance` (horizontal) to the serving BS.
UserDrop place_users(const HexLayout& layout, std::size_t users_per_cell, double min_bs_distance, Rng& rng,
                     double user_height = 1.5, double bs_height = 25.0);

/// 3D distance path loss in dB; fc in GHz.
double path_loss_db(double d3d, double fc_ghz, double user_height);

/// beta_jkl = 10^((PL + shadow - noise_reference_db) / 10). Shadow draws are
/// i.i.d. N(0, sigma^2) dB per link, drawn in (j, k, l) order only when
/// shadowing is enabled with sigma > 0.
FadingTensor large_scale_fading(const HexLayout& layout, const UserDrop& drop, double fc_ghz,
                                const ShadowingSpec& shadow, double noise_reference_db, Rng& rng);

/// Angle (radians, from the global x axis) of user k in cell l as seen from
/// BS j, using the closest torus image.
LinkTensor link_angles(const HexLayout& layout, const UserDrop& drop);

}  // namespace pcrs

#endif  // PCRS_GEOMETRY_HPP
