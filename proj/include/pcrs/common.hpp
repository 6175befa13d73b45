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

#ifndef PCRS_COMMON_HPP
#define PCRS_COMMON_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pcrs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

// Cells and layers are addressed by 0-based indices everywhere in code;
// text output (dumps, CSV) uses 1-based cell labels.
inline constexpr std::size_t kMaxCells = 16;

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what), field_(field_path) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Shannon rate C(x) = log2(1 + x) in bits/s/Hz.
inline double shannon(double snr) { return std::log2(1.0 + snr); }

/// Derives an independent 64-bit stream seed from a base seed and a tuple of
/// stream coordinates (splitmix64 mixing). Used so parallel work items can
/// own their generators without sharing state.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(base);
  for (auto c : coords) h = mix(h ^ mix(c + 0x632be59bd9b4e019ULL));
  return h;
}

/// Set of cells as a bitmask; bit j <=> cell j.
class CellSet {
 public:
  constexpr CellSet() = default;
  constexpr explicit CellSet(std::uint32_t bits) : bits_(bits) {}
  static constexpr CellSet single(std::size_t cell) { return CellSet(1u << cell); }
  static constexpr CellSet all(std::size_t num_cells) {
    return CellSet(num_cells >= 32 ? ~0u : ((1u << num_cells) - 1u));
  }

  constexpr bool contains(std::size_t cell) const { return (bits_ >> cell) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(CellSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr std::uint32_t bits() const { return bits_; }

  constexpr CellSet operator|(CellSet o) const { return CellSet(bits_ | o.bits_); }
  constexpr CellSet operator&(CellSet o) const { return CellSet(bits_ & o.bits_); }
  constexpr CellSet minus(CellSet o) const { return CellSet(bits_ & ~o.bits_); }
  constexpr bool operator==(const CellSet&) const = default;
  constexpr auto operator<=>(const CellSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

}  // namespace pcrs

#endif  // PCRS_COMMON_HPP
