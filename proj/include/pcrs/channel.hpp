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

#ifndef PCRS_CHANNEL_HPP
#define PCRS_CHANNEL_HPP

#include <span>
#include <vector>

#include "pcrs/common.hpp"
#include "pcrs/geometry.hpp"

namespace pcrs {

enum class CorrelationKind { exponential, uncorrelated };

struct CorrelationSpec {
  CorrelationKind kind = CorrelationKind::exponential;
  double kappa = 0.4;
};

// Exponential-model link: R = beta * T(r), T Hermitian Toeplitz with first
// row [1, conj(r), conj(r)^2, ...], r = kappa * exp(i phi).
struct ExpLink {
  double beta = 1.0;
  Complex r{0.0, 0.0};
};

/// Dense exponential correlation matrix. Throws std::invalid_argument for
/// kappa outside [0, 1] or M == 0.
CMatrix exp_correlation_matrix(double kappa, double phi, std::size_t M, double beta);

/// y = R x for an exponential-model link in O(M), without forming R.
void exp_correlation_apply(const ExpLink& link, const Complex* x, Complex* y, std::size_t M);

/// In-place colouring of white CN(0, I) samples: h <- R^{1/2} h where
/// R^{1/2} is the lower Cholesky factor of the exponential-model matrix (an
/// AR(1) recursion).
void exp_correlation_colour(const ExpLink& link, Complex* h, std::size_t M);

/// Hermitian PSD square root. Cholesky first; falls back to a clipped
/// eigendecomposition for semidefinite input. Throws DecompositionError when an
/// eigenvalue is below -1e-10 * max(1, largest eigenvalue).
CMatrix matrix_sqrt_psd(const CMatrix& R);

/// Covariances of the MMSE estimate of g_jkj and its error.
struct EstimationStats {
  double rho_p = 0.0;
  CMatrix est_cov;
  CMatrix err_cov;
};

/// `links` holds R_jk1, ..., R_jkL; `own` is the index of R_jkj.
EstimationStats estimate_stats_correlated(std::span<const CMatrix> links, std::size_t own, double rho_p);

/// Scalar estimation coefficients for R = beta I: alpha_l = sqrt(rho_p) beta_l /
/// (1 + rho_p sum_l' beta_l'), one per entry of `betas`.
std::vector<double> uncorrelated_alpha(std::span<const double> betas, double rho_p);

/// ghat_jkl = R_jkl R_jkj^{-1} ghat_jkj. Throws SingularMatrixError when R_jkj
/// is not invertible.
CVector cross_estimate_ratio(const CMatrix& R_cross, const CMatrix& R_own, const CVector& ghat_own);

/// One standard circularly-symmetric complex Gaussian sample.
inline Complex complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// g = R^{1/2} h for each R in `links`, h ~ CN(0, I) drawn in order.
std::vector<CVector> draw_channels(std::span<const CMatrix> links, Rng& rng);

/// MMSE filter applied to an observation: ghat = sqrt(rho_p) R_target (sum_l
/// rho_p R_l + I)^{-1} r. `target` selects which link's channel is estimated.
CVector mmse_filter_apply(const CVector& observation, std::span<const CMatrix> links, std::size_t target,
                          double rho_p);

/// Pilot observation r = sum_l sqrt(rho_p) g_l + z for unit-variance noise z.
CVector pilot_observation(std::span<const CVector> channels, double rho_p, Rng& rng);

/// Per-link exponential-model parameters for a whole network:
/// link(j, k, l) describes the channel from BS j to user k of cell l.
class LinkSet {
 public:
  LinkSet() = default;
  LinkSet(const FadingTensor& beta, const LinkTensor& angles, const CorrelationSpec& spec);

  std::size_t num_cells() const { return L_; }
  std::size_t users_per_cell() const { return K_; }
  const ExpLink& link(std::size_t bs, std::size_t user, std::size_t cell) const {
    return links_[(bs * K_ + user) * L_ + cell];
  }
  double beta(std::size_t bs, std::size_t user, std::size_t cell) const { return link(bs, user, cell).beta; }

  /// Dense R_jkl (used by tests and reference paths).
  CMatrix matrix(std::size_t bs, std::size_t user, std::size_t cell, std::size_t M) const;

 private:
  std::size_t L_ = 0;
  std::size_t K_ = 0;
  std::vector<ExpLink> links_;
};

}  // namespace pcrs

#endif  // PCRS_CHANNEL_HPP
