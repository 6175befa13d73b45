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

#include "pcrs/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace pcrs {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

// Hex lattice basis for flat-top cells: a1 at 30 degrees, a2 at 90 degrees.
Point2 lattice_point(double radius, int u, int v) {
  const double s = kSqrt3 * radius;
  return {s * (u * std::cos(std::numbers::pi / 6)), s * (u * 0.5 + v)};
}

Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

}  // namespace

HexLayout build_hex_layout(std::size_t num_cells, double radius) {
  if (num_cells < 1 || num_cells > kMaxCells) {
    throw std::invalid_argument("build_hex_layout: num_cells must be in [1, 16]");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("build_hex_layout: radius must be positive");

  HexLayout layout;
  layout.num_cells = num_cells;
  layout.cell_radius = radius;

  struct Site {
    Point2 p;
    double dist;
    double angle;
  };
  std::vector<Site> sites;
  const int span = 4;
  for (int u = -span; u <= span; ++u) {
    for (int v = -span; v <= span; ++v) {
      const Point2 p = lattice_point(radius, u, v);
      double angle = std::atan2(p.y, p.x) - std::numbers::pi / 6;
      while (angle < -1e-9) angle += 2 * std::numbers::pi;
      sites.push_back({p, p.norm(), angle});
    }
  }
  // Ring by ring, counter-clockwise from the 30 degree neighbour.
  const double tol = 1e-6 * radius;
  std::sort(sites.begin(), sites.end(), [tol](const Site& a, const Site& b) {
    if (std::abs(a.dist - b.dist) > tol) return a.dist < b.dist;
    return a.angle < b.angle;
  });
  for (std::size_t c = 0; c < num_cells; ++c) layout.bs_positions.push_back(sites[c].p);
  layout.bs_positions[0] = {0.0, 0.0};

  layout.wrap_offsets.push_back({0.0, 0.0});
  if (num_cells == 7) {
    // 7-cell cluster lattice: 2 a1 + a2 and its rotations by 60 degrees.
    const Point2 t = lattice_point(radius, 2, 1);
    for (int k = 0; k < 6; ++k) layout.wrap_offsets.push_back(rotate(t, k * std::numbers::pi / 3));
  }
  return layout;
}

bool inside_hexagon(Point2 center, double radius, Point2 p) {
  const double dx = std::abs(p.x - center.x);
  const double dy = std::abs(p.y - center.y);
  const double eps = 1e-12 * radius;
  return dx <= radius + eps && dy <= 0.5 * kSqrt3 * radius + eps && kSqrt3 * dx + dy <= kSqrt3 * radius + eps;
}

Point2 wrapped_offset(const HexLayout& layout, std::size_t bs, Point2 point) {
  const Point2 base = point - layout.bs_positions.at(bs);
  Point2 best = base;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Point2& off : layout.wrap_offsets) {
    const Point2 cand = base + off;
    const double d = cand.norm();
    if (d < best_d) {
      best_d = d;
      best = cand;
    }
  }
  return best;
}

double wrap_distance_3d(const HexLayout& layout, std::size_t bs, Point2 point, double user_height,
                        double bs_height) {
  const double horizontal = wrapped_offset(layout, bs, point).norm();
  return std::hypot(horizontal, bs_height - user_height);
}

UserDrop place_users(const HexLayout& layout, std::size_t users_per_cell, double min_bs_distance, Rng& rng,
                     double user_height, double bs_height) {
  if (min_bs_distance >= layout.cell_radius) {
    throw std::invalid_argument("place_users: min_bs_distance must be below the cell radius");
  }
  UserDrop drop;
  drop.num_cells = layout.num_cells;
  drop.users_per_cell = users_per_cell;
  drop.user_height = user_height;
  drop.bs_height = bs_height;
  drop.positions.reserve(layout.num_cells * users_per_cell);

  const double r = layout.cell_radius;
  std::uniform_real_distribution<double> ux(-r, r);
  std::uniform_real_distribution<double> uy(-0.5 * kSqrt3 * r, 0.5 * kSqrt3 * r);
  for (std::size_t l = 0; l < layout.num_cells; ++l) {
    const Point2 c = layout.bs_positions[l];
    for (std::size_t k = 0; k < users_per_cell; ++k) {
      for (;;) {
        const Point2 off{ux(rng), uy(rng)};
        if (!inside_hexagon({0.0, 0.0}, r, off)) continue;
        if (off.norm() < min_bs_distance) continue;
        drop.positions.push_back(c + off);
        break;
      }
    }
  }
  return drop;
}

double path_loss_db(double d3d, double fc_ghz, double user_height) {
  if (!(d3d > 0.0)) throw std::invalid_argument("path_loss_db: distance must be positive");
  if (!(fc_ghz > 0.0)) throw std::invalid_argument("path_loss_db: carrier frequency must be positive");
  return -13.54 - 39.08 * std::log10(d3d) - 20.0 * std::log10(fc_ghz) + 0.6 * (user_height - 1.5);
}

FadingTensor large_scale_fading(const HexLayout& layout, const UserDrop& drop, double fc_ghz,
                                const ShadowingSpec& shadow, double noise_reference_db, Rng& rng) {
  const std::size_t L = layout.num_cells;
  const std::size_t K = drop.users_per_cell;
  FadingTensor beta(L, K);
  const bool shadowed = shadow.enabled && shadow.sigma_db > 0.0;
  std::normal_distribution<double> normal(0.0, shadowed ? shadow.sigma_db : 1.0);
  for (std::size_t j = 0; j < L; ++j) {
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t l = 0; l < L; ++l) {
        const double d = wrap_distance_3d(layout, j, drop.at(l, k), drop.user_height, drop.bs_height);
        double db = path_loss_db(d, fc_ghz, drop.user_height) - noise_reference_db;
        if (shadowed) db += normal(rng);
        beta(j, k, l) = std::pow(10.0, db / 10.0);
      }
    }
  }
  return beta;
}

LinkTensor link_angles(const HexLayout& layout, const UserDrop& drop) {
  LinkTensor phi(layout.num_cells, drop.users_per_cell);
  for (std::size_t j = 0; j < layout.num_cells; ++j) {
    for (std::size_t k = 0; k < drop.users_per_cell; ++k) {
      for (std::size_t l = 0; l < layout.num_cells; ++l) {
        const Point2 d = wrapped_offset(layout, j, drop.at(l, k));
        phi(j, k, l) = std::atan2(d.y, d.x);
      }
    }
  }
  return phi;
}

}  // namespace pcrs
