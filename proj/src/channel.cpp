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

#include "pcrs/channel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace pcrs {

CMatrix exp_correlation_matrix(double kappa, double phi, std::size_t M, double beta) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::invalid_argument("exp_correlation_matrix: kappa outside [0, 1]");
  if (M == 0) throw std::invalid_argument("exp_correlation_matrix: M must be positive");
  const Complex r = std::polar(kappa, phi);
  const Eigen::Index n = static_cast<Eigen::Index>(M);
  CMatrix R(n, n);
  // powers[d] = r^d
  std::vector<Complex> powers(M);
  powers[0] = 1.0;
  for (std::size_t d = 1; d < M; ++d) powers[d] = powers[d - 1] * r;
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index c = 0; c < n; ++c) {
      R(m, c) = m >= c ? powers[m - c] : std::conj(powers[c - m]);
    }
  }
  return beta * R;
}

void exp_correlation_apply(const ExpLink& link, const Complex* x, Complex* y, std::size_t M) {
  if (M == 0) return;
  const Complex r = link.r;
  const Complex rc = std::conj(r);
  // y_m = sum_{n<=m} r^{m-n} x_n + sum_{n>m} conj(r)^{n-m} x_n
  Complex forward = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    forward = x[m] + r * forward;
    y[m] = forward;
  }
  Complex backward = 0.0;
  for (std::size_t m = M; m-- > 0;) {
    y[m] += backward;
    backward = rc * (x[m] + backward);
  }
  for (std::size_t m = 0; m < M; ++m) y[m] *= link.beta;
}

void exp_correlation_colour(const ExpLink& link, Complex* h, std::size_t M) {
  if (M == 0) return;
  const double kappa = std::abs(link.r);
  const double s = std::sqrt(std::max(0.0, 1.0 - kappa * kappa));
  const double scale = std::sqrt(link.beta);
  Complex prev = h[0];
  h[0] = scale * prev;
  for (std::size_t m = 1; m < M; ++m) {
    prev = link.r * prev + s * h[m];
    h[m] = scale * prev;
  }
}

CMatrix matrix_sqrt_psd(const CMatrix& R) {
  if (R.rows() != R.cols()) throw std::invalid_argument("matrix_sqrt_psd: matrix must be square");
  if (R.size() == 0) return R;
  Eigen::LLT<CMatrix> llt(R);
  if (llt.info() == Eigen::Success) {
    CMatrix Lf = llt.matrixL();
    return Lf;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(R);
  if (eig.info() != Eigen::Success) throw DecompositionError("matrix_sqrt_psd: eigendecomposition failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -1e-10 * scale) throw DecompositionError("matrix_sqrt_psd: matrix is not positive semidefinite");
  const Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
}

namespace {

void check_links(std::span<const CMatrix> links, std::size_t index) {
  if (links.empty()) throw std::invalid_argument("estimation: no correlation matrices");
  if (index >= links.size()) throw std::invalid_argument("estimation: link index out of range");
  const Eigen::Index M = links[0].rows();
  for (const CMatrix& R : links) {
    if (R.rows() != M || R.cols() != M) throw std::invalid_argument("estimation: dimension mismatch");
  }
}

CMatrix observation_covariance(std::span<const CMatrix> links, double rho_p) {
  const Eigen::Index M = links[0].rows();
  CMatrix Q = CMatrix::Identity(M, M);
  for (const CMatrix& R : links) Q += rho_p * R;
  return Q;
}

}  // namespace

EstimationStats estimate_stats_correlated(std::span<const CMatrix> links, std::size_t own, double rho_p) {
  check_links(links, own);
  const CMatrix& Rown = links[own];
  Eigen::LLT<CMatrix> llt(observation_covariance(links, rho_p));
  EstimationStats stats;
  stats.rho_p = rho_p;
  stats.est_cov = rho_p * Rown * llt.solve(Rown);
  // Hermitian part only; the solve leaves O(eps) skew.
  stats.est_cov = 0.5 * (stats.est_cov + stats.est_cov.adjoint()).eval();
  stats.err_cov = Rown - stats.est_cov;
  return stats;
}

std::vector<double> uncorrelated_alpha(std::span<const double> betas, double rho_p) {
  double total = 0.0;
  for (double b : betas) total += b;
  const double denom = 1.0 + rho_p * total;
  std::vector<double> alpha;
  alpha.reserve(betas.size());
  for (double b : betas) alpha.push_back(std::sqrt(rho_p) * b / denom);
  return alpha;
}

CVector cross_estimate_ratio(const CMatrix& R_cross, const CMatrix& R_own, const CVector& ghat_own) {
  if (R_own.rows() != R_own.cols() || R_cross.rows() != R_own.rows() || ghat_own.size() != R_own.rows()) {
    throw std::invalid_argument("cross_estimate_ratio: dimension mismatch");
  }
  Eigen::FullPivLU<CMatrix> lu(R_own);
  if (!lu.isInvertible()) throw SingularMatrixError("cross_estimate_ratio: R_jkj is singular");
  return R_cross * lu.solve(ghat_own);
}

std::vector<CVector> draw_channels(std::span<const CMatrix> links, Rng& rng) {
  std::vector<CVector> out;
  out.reserve(links.size());
  for (const CMatrix& R : links) {
    const CMatrix root = matrix_sqrt_psd(R);
    CVector h(R.rows());
    for (Eigen::Index m = 0; m < h.size(); ++m) h(m) = complex_normal(rng);
    out.push_back(root * h);
  }
  return out;
}

CVector mmse_filter_apply(const CVector& observation, std::span<const CMatrix> links, std::size_t target,
                          double rho_p) {
  check_links(links, target);
  if (observation.size() != links[0].rows()) throw std::invalid_argument("mmse_filter_apply: dimension mismatch");
  Eigen::LLT<CMatrix> llt(observation_covariance(links, rho_p));
  return std::sqrt(rho_p) * (links[target] * llt.solve(observation));
}

CVector pilot_observation(std::span<const CVector> channels, double rho_p, Rng& rng) {
  if (channels.empty()) throw std::invalid_argument("pilot_observation: no channels");
  CVector r(channels[0].size());
  for (Eigen::Index m = 0; m < r.size(); ++m) r(m) = complex_normal(rng);
  for (const CVector& g : channels) r += std::sqrt(rho_p) * g;
  return r;
}

LinkSet::LinkSet(const FadingTensor& beta, const LinkTensor& angles, const CorrelationSpec& spec)
    : L_(beta.num_cells()), K_(beta.users_per_cell()), links_(L_ * K_ * L_) {
  const double kappa = spec.kind == CorrelationKind::uncorrelated ? 0.0 : spec.kappa;
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::invalid_argument("LinkSet: kappa outside [0, 1]");
  for (std::size_t j = 0; j < L_; ++j) {
    for (std::size_t k = 0; k < K_; ++k) {
      for (std::size_t l = 0; l < L_; ++l) {
        ExpLink& e = links_[(j * K_ + k) * L_ + l];
        e.beta = beta(j, k, l);
        e.r = std::polar(kappa, angles(j, k, l));
      }
    }
  }
}

CMatrix LinkSet::matrix(std::size_t bs, std::size_t user, std::size_t cell, std::size_t M) const {
  const ExpLink& e = link(bs, user, cell);
  return exp_correlation_matrix(std::abs(e.r), std::arg(e.r), M, e.beta);
}

}  // namespace pcrs
