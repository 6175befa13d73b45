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

#include "pcrs/link_bounds.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace pcrs {

std::string to_string(LayerSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t bit = 0; bit < 32; ++bit) {
    if (!((s.bits() >> bit) & 1u)) continue;
    if (!first) out += ',';
    first = false;
    out += std::to_string(bit / 2 + 1);
    out += (bit % 2 == 0) ? 'a' : 'b';
  }
  out += '}';
  return out;
}

CMatrix zf_precoder(const CMatrix& Ghat) {
  if (Ghat.cols() > Ghat.rows()) throw std::invalid_argument("zf_precoder: more users than antennas");
  const CMatrix gram = Ghat.adjoint() * Ghat;
  Eigen::FullPivLU<CMatrix> lu(gram);
  // Relative pivot threshold; exact rank deficiency shows up as a ~eps pivot.
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw SingularMatrixError("zf_precoder: channel estimate is rank deficient");
  return Ghat * lu.inverse();
}

CMatrix rzf_precoder(const CMatrix& Ghat, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("rzf_precoder: delta must be positive");
  const Eigen::Index K = Ghat.cols();
  CMatrix gram = Ghat.adjoint() * Ghat;
  gram.diagonal().array() += delta;
  Eigen::LLT<CMatrix> llt(gram);
  return Ghat * llt.solve(CMatrix::Identity(K, K));
}

double lambda_zf_closed(std::span<const double> own_beta, std::span<const double> own_alpha, double rho_p,
                        std::uint64_t M) {
  const std::size_t K = own_beta.size();
  if (own_alpha.size() != K) throw std::invalid_argument("lambda_zf_closed: size mismatch");
  if (M <= K) throw std::invalid_argument("lambda_zf_closed: requires M > K");
  const double sq = std::sqrt(rho_p);
  double sum = 0.0;
  for (std::size_t i = 0; i < K; ++i) sum += 1.0 / (sq * own_beta[i] * own_alpha[i]);
  return sum / (static_cast<double>(K) * static_cast<double>(M - K));
}

namespace {

// alpha(j, k, l) for every link, uncorrelated estimation.
LinkTensor alpha_tensor(const FadingTensor& beta, double rho_p) {
  const std::size_t L = beta.num_cells();
  const std::size_t K = beta.users_per_cell();
  LinkTensor alpha(L, K);
  std::vector<double> row(L);
  for (std::size_t j = 0; j < L; ++j) {
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t l = 0; l < L; ++l) row[l] = beta(j, k, l);
      const std::vector<double> a = uncorrelated_alpha(row, rho_p);
      for (std::size_t l = 0; l < L; ++l) alpha(j, k, l) = a[l];
    }
  }
  return alpha;
}

std::vector<double> lambda_from(const FadingTensor& beta, const LinkTensor& alpha, double rho_p,
                                std::uint64_t M) {
  const std::size_t L = beta.num_cells();
  const std::size_t K = beta.users_per_cell();
  std::vector<double> lambda(L);
  std::vector<double> b(K), a(K);
  for (std::size_t j = 0; j < L; ++j) {
    for (std::size_t k = 0; k < K; ++k) {
      b[k] = beta(j, k, j);
      a[k] = alpha(j, k, j);
    }
    lambda[j] = lambda_zf_closed(b, a, rho_p, M);
  }
  return lambda;
}

}  // namespace

std::vector<double> lambda_zf_closed(const FadingTensor& beta, double rho_p, std::uint64_t M) {
  return lambda_from(beta, alpha_tensor(beta, rho_p), rho_p, M);
}

double normalization_lambda_mc(std::span<const CMatrix> precoders) {
  if (precoders.empty()) throw std::invalid_argument("normalization_lambda_mc: no samples");
  double sum = 0.0;
  for (const CMatrix& W : precoders) sum += W.squaredNorm() / static_cast<double>(W.cols());
  return sum / static_cast<double>(precoders.size());
}

std::vector<GainTable> gain_tables_closed_zf(const FadingTensor& beta, double rho_p, double rho_dl,
                                             std::uint64_t M) {
  const std::size_t L = beta.num_cells();
  const std::size_t K = beta.users_per_cell();
  if (M <= K) throw std::invalid_argument("gain_table_closed_zf: requires M > K");
  const LinkTensor alpha = alpha_tensor(beta, rho_p);
  const std::vector<double> lambda = lambda_from(beta, alpha, rho_p, M);
  const double sq = std::sqrt(rho_p);
  const double dof = static_cast<double>(M - K);

  // inv_est[j] = sum_k 1 / ((M - K) sqrt(rho_p) beta_jkj alpha_jkj)
  std::vector<double> inv_est(L, 0.0);
  for (std::size_t j = 0; j < L; ++j) {
    for (std::size_t k = 0; k < K; ++k) inv_est[j] += 1.0 / (dof * sq * beta(j, k, j) * alpha(j, k, j));
  }

  std::vector<GainTable> tables;
  tables.reserve(K);
  for (std::size_t i = 0; i < K; ++i) {
    GainTable t(L);
    t.pilot = i;
    t.rho_dl = rho_dl;
    t.lambda = lambda;
    for (std::size_t l = 0; l < L; ++l) {
      double noise = 1.0;
      for (std::size_t j = 0; j < L; ++j) {
        const double scale = rho_dl / lambda[j];
        const double ratio = beta(j, i, l) / beta(j, i, j);
        t.signal(l, j) = scale * ratio * ratio;
        const double err = beta(j, i, l) - sq * beta(j, i, l) * alpha(j, i, l);
        noise += scale * err * inv_est[j];
      }
      t.noise_equiv[l] = noise;
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

GainTable gain_table_closed_zf(const FadingTensor& beta, double rho_p, double rho_dl, std::uint64_t M,
                               std::size_t pilot) {
  if (pilot >= beta.users_per_cell()) throw std::invalid_argument("gain_table_closed_zf: pilot out of range");
  return gain_tables_closed_zf(beta, rho_p, rho_dl, M)[pilot];
}

GainTable gain_table_mc(const LinkSet& links, const PrecoderSpec& precoder, double rho_p, double rho_dl,
                        std::size_t M, std::size_t pilot, const McOptions& options) {
  if (pilot >= links.users_per_cell()) throw std::invalid_argument("gain_table_mc: pilot out of range");
  return gain_tables_mc(links, precoder, rho_p, rho_dl, M, options)[pilot];
}

double bound_value(const GainTable& table, std::size_t receiver, CellSet decode, CellSet omega) {
  const std::size_t L = table.num_cells;
  if (receiver >= L || !decode.contains(receiver)) {
    throw std::invalid_argument("bound_value: receiver must belong to the decode set");
  }
  if (!omega.subset_of(decode)) throw std::invalid_argument("bound_value: omega must be a subset of the decode set");
  if (!decode.subset_of(CellSet::all(L))) throw std::invalid_argument("bound_value: decode set out of range");
  double num = 0.0;
  double den = table.noise_equiv[receiver];
  for (std::size_t j = 0; j < L; ++j) {
    if (omega.contains(j)) {
      num += table.signal(receiver, j);
    } else if (!decode.contains(j)) {
      den += table.signal(receiver, j);
    }
  }
  return shannon(num / den);
}

double layered_bound_value(const LayeredGainTable& table, std::size_t receiver, LayerSet decoded,
                           LayerSet conditioned) {
  if (table.base == nullptr) throw std::invalid_argument("layered_bound_value: missing gain table");
  if (!decoded.disjoint(conditioned)) throw std::invalid_argument("layered_bound_value: D and C overlap");
  const std::size_t L = table.base->num_cells;
  if (receiver >= L) throw std::invalid_argument("layered_bound_value: receiver out of range");
  const LayerSet known = decoded | conditioned;
  double num = 0.0;
  double den = table.base->noise_equiv[receiver];
  for (std::size_t j = 0; j < L; ++j) {
    // Whole-message terms use the unsplit power so mu = 0 / mu = 1 and full
    // pairs reproduce the unsplit bound exactly.
    const bool a_dec = decoded.has_outer(j);
    const bool b_dec = decoded.has_inner(j);
    const bool a_noise = !known.has_outer(j);
    const bool b_noise = !known.has_inner(j);
    const double P = table.base->signal(receiver, j);
    if (a_dec && b_dec) {
      num += P;
    } else if (a_dec) {
      num += table.outer(receiver, j);
    } else if (b_dec) {
      num += table.inner(receiver, j);
    }
    if (a_noise && b_noise) {
      den += P;
    } else if (a_noise) {
      den += table.outer(receiver, j);
    } else if (b_noise) {
      den += table.inner(receiver, j);
    }
  }
  return shannon(num / den);
}

}  // namespace pcrs
