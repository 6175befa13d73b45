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

// Monte Carlo evaluation of the worst-case-noise bound ingredients.
//
// For BS j every sample draws the channels g_jil to all pilot-sharing users,
// forms the pilot observations, MMSE-estimates the own-cell channels, builds
// the precoder W_j and records V = G^H W_j, i.e. the effective gains
// g_jil^H w_jkj for every (pilot i, cell l, stream k). The first and second
// moments of V give the coherent signal power and the variance that the
// bound treats as noise.

#include <algorithm>
#include <optional>

#include <Eigen/Cholesky>

#include "pcrs/link_bounds.hpp"

namespace pcrs {

namespace {

constexpr std::size_t kBlockSize = 16;

struct BlockSums {
  CMatrix sum_v;         // (K * L) x K, row i * L + l
  Eigen::MatrixXd sum_p; // same shape, sum of |V|^2
  double trace = 0.0;    // sum of tr(W^H W) / K
};

struct PilotFilter {
  bool diagonal = true;
  double scalar = 0.0;                  // 1 / (1 + rho_p sum_l beta_jkl)
  std::optional<Eigen::LLT<CMatrix>> q; // factor of I + rho_p sum_l R_jkl
};

PilotFilter make_filter(const LinkSet& links, std::size_t j, std::size_t k, double rho_p, std::size_t M) {
  const std::size_t L = links.num_cells();
  PilotFilter f;
  double total = 0.0;
  for (std::size_t l = 0; l < L; ++l) {
    total += links.beta(j, k, l);
    if (links.link(j, k, l).r != Complex(0.0, 0.0)) f.diagonal = false;
  }
  if (f.diagonal) {
    f.scalar = 1.0 / (1.0 + rho_p * total);
    return f;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(M);
  CMatrix Q = CMatrix::Identity(n, n);
  for (std::size_t l = 0; l < L; ++l) Q += rho_p * links.matrix(j, k, l, M);
  f.q.emplace(Q);
  return f;
}

BlockSums run_block(const LinkSet& links, const std::vector<PilotFilter>& filters, std::size_t j,
                    std::size_t count, const PrecoderSpec& precoder, double delta, double rho_p, std::size_t M,
                    std::uint64_t seed) {
  const std::size_t L = links.num_cells();
  const std::size_t K = links.users_per_cell();
  const Eigen::Index n = static_cast<Eigen::Index>(M);
  const Eigen::Index cols = static_cast<Eigen::Index>(L * K);
  const double sq = std::sqrt(rho_p);

  BlockSums sums;
  sums.sum_v = CMatrix::Zero(cols, static_cast<Eigen::Index>(K));
  sums.sum_p = Eigen::MatrixXd::Zero(cols, static_cast<Eigen::Index>(K));

  // Draw the whole block first (same draw order as sample-by-sample) so the
  // pilot filters run as one multi-column solve per stream.
  Rng rng(seed);
  const Eigen::Index cnt = static_cast<Eigen::Index>(count);
  std::vector<CMatrix> Gs(count, CMatrix(n, cols));
  std::vector<CMatrix> obs(K, CMatrix(n, cnt));
  for (std::size_t s = 0; s < count; ++s) {
    CMatrix& G = Gs[s];
    for (std::size_t i = 0; i < K; ++i) {
      for (std::size_t l = 0; l < L; ++l) {
        const Eigen::Index c = static_cast<Eigen::Index>(i * L + l);
        for (Eigen::Index m = 0; m < n; ++m) G(m, c) = complex_normal(rng);
        exp_correlation_colour(links.link(j, i, l), G.col(c).data(), M);
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      auto r = obs[k].col(static_cast<Eigen::Index>(s));
      for (Eigen::Index m = 0; m < n; ++m) r(m) = complex_normal(rng);
      for (std::size_t l = 0; l < L; ++l) r += sq * G.col(static_cast<Eigen::Index>(k * L + l));
    }
  }

  // obs[k] becomes the block of MMSE estimates of the own-cell channel k.
  CVector y(n);
  for (std::size_t k = 0; k < K; ++k) {
    const PilotFilter& f = filters[k];
    const ExpLink& own = links.link(j, k, j);
    if (f.diagonal) {
      obs[k] *= sq * own.beta * f.scalar;
      continue;
    }
    f.q->matrixL().solveInPlace(obs[k]);
    f.q->matrixU().solveInPlace(obs[k]);
    for (Eigen::Index s = 0; s < cnt; ++s) {
      y = obs[k].col(s);
      exp_correlation_apply(own, y.data(), obs[k].col(s).data(), M);
    }
    obs[k] *= sq;
  }

  CMatrix Ghat(n, static_cast<Eigen::Index>(K));
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t k = 0; k < K; ++k) {
      Ghat.col(static_cast<Eigen::Index>(k)) = obs[k].col(static_cast<Eigen::Index>(s));
    }
    const CMatrix W = precoder.kind == PrecoderKind::zf ? zf_precoder(Ghat) : rzf_precoder(Ghat, delta);
    const CMatrix V = Gs[s].adjoint() * W;
    sums.sum_v += V;
    sums.sum_p += V.cwiseAbs2();
    sums.trace += W.squaredNorm() / static_cast<double>(K);
  }
  return sums;
}

}  // namespace

std::vector<GainTable> gain_tables_mc(const LinkSet& links, const PrecoderSpec& precoder, double rho_p,
                                      double rho_dl, std::size_t M, const McOptions& options) {
  const std::size_t L = links.num_cells();
  const std::size_t K = links.users_per_cell();
  if (options.num_samples < 1) throw std::invalid_argument("gain_table_mc: num_samples must be at least 1");
  if (L == 0 || K == 0) throw std::invalid_argument("gain_table_mc: empty network");
  if (precoder.kind == PrecoderKind::zf && M < K) throw std::invalid_argument("gain_table_mc: ZF requires M >= K");
  double delta = precoder.delta;
  if (precoder.kind == PrecoderKind::rzf && !(delta > 0.0)) {
    delta = rho_dl > 0.0 ? static_cast<double>(K) / rho_dl : 1.0;
  }

  const std::size_t S = options.num_samples;
  const std::size_t num_blocks = (S + kBlockSize - 1) / kBlockSize;
  const double inv_s = 1.0 / static_cast<double>(S);

  std::vector<GainTable> tables(K, GainTable(L));
  std::vector<std::vector<double>> total_power(K, std::vector<double>(L, 0.0));
  for (std::size_t i = 0; i < K; ++i) {
    tables[i].pilot = i;
    tables[i].rho_dl = rho_dl;
  }

  for (std::size_t j = 0; j < L; ++j) {
    std::vector<PilotFilter> filters(K);
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (std::size_t k = 0; k < K; ++k) filters[k] = make_filter(links, j, k, rho_p, M);

    std::vector<BlockSums> blocks(num_blocks);
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (std::size_t b = 0; b < num_blocks; ++b) {
      const std::size_t count = std::min(kBlockSize, S - b * kBlockSize);
      blocks[b] = run_block(links, filters, j, count, precoder, delta, rho_p, M,
                            derive_seed(options.seed, {j, b}));
    }

    // Deterministic reduction in block order.
    BlockSums total = std::move(blocks[0]);
    for (std::size_t b = 1; b < num_blocks; ++b) {
      total.sum_v += blocks[b].sum_v;
      total.sum_p += blocks[b].sum_p;
      total.trace += blocks[b].trace;
    }

    const double lambda = total.trace * inv_s;
    const double scale = lambda > 0.0 ? rho_dl / lambda : 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      tables[i].lambda[j] = lambda;
      for (std::size_t l = 0; l < L; ++l) {
        const Eigen::Index row = static_cast<Eigen::Index>(i * L + l);
        const Complex mean = total.sum_v(row, static_cast<Eigen::Index>(i)) * inv_s;
        tables[i].signal(l, j) = scale * std::norm(mean);
        total_power[i][l] += scale * total.sum_p.row(row).sum() * inv_s;
      }
    }
  }

  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t l = 0; l < L; ++l) {
      double coherent = 0.0;
      for (std::size_t j = 0; j < L; ++j) coherent += tables[i].signal(l, j);
      // E|x|^2 >= |E x|^2 holds for sample moments too; clamp rounding only.
      tables[i].noise_equiv[l] = 1.0 + std::max(0.0, total_power[i][l] - coherent);
    }
  }
  return tables;
}

}  // namespace pcrs
