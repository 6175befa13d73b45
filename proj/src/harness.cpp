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

#include "pcrs/harness.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "pcrs/geometry.hpp"

namespace pcrs {

namespace {

// Stream tags keep evaluation and avg-mu training realizations disjoint.
constexpr std::uint64_t kEvalStream = 0;
constexpr std::uint64_t kTrainStream = 1;

double noise_watts(double noise_dbm) { return std::pow(10.0, (noise_dbm - 30.0) / 10.0); }

bool has_scheme(const ExperimentConfig& cfg, Scheme s) {
  return std::find(cfg.schemes.begin(), cfg.schemes.end(), s) != cfg.schemes.end();
}

UserDrop first_users(const UserDrop& drop, std::size_t K) {
  if (K == drop.users_per_cell) return drop;
  UserDrop out = drop;
  out.users_per_cell = K;
  out.positions.clear();
  for (std::size_t l = 0; l < drop.num_cells; ++l) {
    for (std::size_t k = 0; k < K; ++k) out.positions.push_back(drop.at(l, k));
  }
  return out;
}

FadingTensor first_users(const FadingTensor& beta, std::size_t K) {
  if (K == beta.users_per_cell()) return beta;
  const std::size_t L = beta.num_cells();
  FadingTensor out(L, K);
  for (std::size_t j = 0; j < L; ++j) {
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t l = 0; l < L; ++l) out(j, k, l) = beta(j, k, l);
    }
  }
  return out;
}

std::vector<GainTable> build_tables(const ExperimentConfig& cfg, std::size_t K, double kappa, double sigma,
                                    std::uint64_t M, std::uint64_t stream, std::size_t r, bool parallel) {
  // Drops are drawn once with the largest K of the sweep and every K point
  // keeps the first K users of each cell, so the K points of a realization
  // share user positions and shadowing.
  const std::size_t K_draw = std::max(K, *std::max_element(cfg.users_per_cell.begin(), cfg.users_per_cell.end()));
  const HexLayout layout = build_hex_layout(cfg.num_cells, cfg.cell_radius);
  Rng drop_rng(derive_seed(cfg.seed, {stream, r, K_draw}));
  const UserDrop full =
      place_users(layout, K_draw, cfg.min_bs_distance, drop_rng, cfg.user_height, cfg.bs_height);
  // Shadowing draws come from their own stream so the same standard normals
  // are scaled by every sigma in a sweep.
  Rng shadow_rng(derive_seed(cfg.seed, {stream, r, K_draw, 1}));
  const FadingTensor full_beta =
      large_scale_fading(layout, full, cfg.fc_ghz, {sigma, sigma > 0.0}, 0.0, shadow_rng);
  const UserDrop drop = first_users(full, K);
  const FadingTensor beta = first_users(full_beta, K);

  const double rho_dl = rho_from_power(cfg.bs_power_watts, K, cfg.noise_dbm, cfg.power_is_per_user);
  const double rho_p = cfg.rho_p ? *cfg.rho_p : rho_p_from_power(cfg.uplink_power_watts, K, cfg.noise_dbm);

  if (cfg.correlation == CorrelationKind::uncorrelated && cfg.precoder.kind == PrecoderKind::zf) {
    return gain_tables_closed_zf(beta, rho_p, rho_dl, M);
  }
  const CorrelationSpec spec{cfg.correlation, cfg.correlation == CorrelationKind::uncorrelated ? 0.0 : kappa};
  const LinkSet links(beta, link_angles(layout, drop), spec);
  McOptions mc;
  mc.num_samples = cfg.mc_channel_samples;
  mc.seed = derive_seed(cfg.seed, {stream, r, K, 2, M});
  mc.parallel = parallel;
  return gain_tables_mc(links, cfg.precoder, rho_p, rho_dl, static_cast<std::size_t>(M), mc);
}

std::string point_label(std::uint64_t M, double kappa, std::size_t K, double sigma) {
  std::ostringstream os;
  os << "M=" << M << " kappa=" << kappa << " K=" << K << " sigma=" << sigma;
  return os.str();
}

}  // namespace

double rho_from_power(double bs_power_watts, std::size_t K, double noise_dbm, bool per_user) {
  if (!(bs_power_watts > 0.0) || K == 0) throw std::invalid_argument("rho_from_power: inputs must be positive");
  const double per_stream = per_user ? bs_power_watts : bs_power_watts / static_cast<double>(K);
  return per_stream / noise_watts(noise_dbm);
}

double rho_p_from_power(double uplink_power_watts, std::size_t K, double noise_dbm) {
  if (!(uplink_power_watts > 0.0) || K == 0) throw std::invalid_argument("rho_p_from_power: inputs must be positive");
  return static_cast<double>(K) * uplink_power_watts / noise_watts(noise_dbm);
}

std::vector<double> evaluate_realization(const ExperimentConfig& cfg, std::size_t K, double kappa, double sigma,
                                         std::uint64_t M, std::uint64_t stream, std::size_t realization,
                                         double avg_mu, double* winning_mu, bool parallel) {
  const std::vector<GainTable> tables = build_tables(cfg, K, kappa, sigma, M, stream, realization, parallel);
  std::vector<std::size_t> ics;
  if (cfg.ic_mode == IcMode::all) {
    for (std::size_t i = 0; i < K; ++i) ics.push_back(i);
  } else {
    // Users are placed i.i.d., so pilot 0 is a uniformly random IC; using the
    // same pilot at every K point pairs the nested drops user for user.
    ics.push_back(0);
  }

  const bool want_rs = has_scheme(cfg, Scheme::rs) || winning_mu != nullptr;
  RsFamily family;
  if (want_rs) family = make_rs_family(cfg.num_cells, cfg.rs_family);
  const std::vector<double> grid = mu_grid(cfg.mu_step);

  std::vector<double> se(cfg.schemes.size(), 0.0);
  double mu_sum = 0.0;
  for (std::size_t i : ics) {
    const GainTable& t = tables[i];
    const SymRateReport snd = max_sym_snd(t);
    SymRateReport rs;
    if (want_rs) {
      FmuOptions opts;
      opts.parallel = parallel;
      if (winning_mu == nullptr) opts.floor = snd.t_star;
      rs = (cfg.mode == RunMode::avg_mu && winning_mu == nullptr)
               ? rs_lower_bound_avgmu(t, avg_mu, snd, family, opts)
               : rs_lower_bound(t, grid, snd, family, opts);
      mu_sum += rs.winning_mu;
    }
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
      switch (cfg.schemes[s]) {
        case Scheme::tin: se[s] += max_sym_tin(t).t_star; break;
        case Scheme::sd: se[s] += max_sym_sd(t).t_star; break;
        case Scheme::snd: se[s] += snd.t_star; break;
        case Scheme::rs: se[s] += rs.t_star; break;
      }
    }
  }
  for (double& v : se) v /= static_cast<double>(ics.size());
  if (winning_mu != nullptr) *winning_mu = mu_sum / static_cast<double>(ics.size());
  return se;
}

std::vector<PointSamples> run_sweep_samples(const ExperimentConfig& cfg, const ProgressFn& progress) {
  validate(cfg);
  std::vector<PointSamples> out;
  const bool rs = has_scheme(cfg, Scheme::rs);
  const std::size_t N = cfg.realizations;
  for (std::size_t K : cfg.users_per_cell) {
    for (double kappa : cfg.kappa) {
      for (double sigma : cfg.sigma_shadow) {
        for (std::uint64_t M : cfg.antennas) {
          PointSamples p;
          p.M = M;
          p.kappa = cfg.correlation == CorrelationKind::uncorrelated ? 0.0 : kappa;
          p.K = K;
          p.sigma_shadow = sigma;
          p.avg_mu = std::numeric_limits<double>::quiet_NaN();
          p.per_scheme.assign(cfg.schemes.size(), std::vector<double>(N, 0.0));
          if (N == 0) {
            out.push_back(std::move(p));
            continue;
          }
          const std::string label = point_label(M, p.kappa, K, sigma);

          if (rs && cfg.mode == RunMode::avg_mu) {
            // Train on one pilot IC per training realization, disjoint seeds.
            ExperimentConfig train = cfg;
            train.ic_mode = IcMode::representative;
            train.mode = RunMode::optimize_mu;
            std::vector<std::pair<std::string, double>> mus(cfg.training_realizations);
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
            for (std::size_t r = 0; r < cfg.training_realizations; ++r) {
              double mu = 0.0;
              evaluate_realization(train, K, kappa, sigma, M, kTrainStream, r, 0.0, &mu, false);
              mus[r] = {label, mu};
            }
            p.avg_mu = average_mu(mus).at(label);
            if (progress) progress(label + " trained avg mu=" + std::to_string(p.avg_mu));
          }

#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
          for (std::size_t r = 0; r < N; ++r) {
            const std::vector<double> se =
                evaluate_realization(cfg, K, kappa, sigma, M, kEvalStream, r, p.avg_mu, nullptr, false);
            for (std::size_t s = 0; s < se.size(); ++s) p.per_scheme[s][r] = se[s];
          }
          if (progress) progress(label + " done");
          out.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, const ProgressFn& progress) {
  std::vector<ResultRow> rows;
  for (const PointSamples& p : run_sweep_samples(cfg, progress)) {
    if (cfg.realizations == 0) continue;
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
      const std::vector<double>& v = p.per_scheme[s];
      const double n = static_cast<double>(v.size());
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= n;
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      ResultRow row;
      row.scheme = std::string(scheme_name(cfg.schemes[s]));
      row.M = p.M;
      row.kappa = p.kappa;
      row.K = p.K;
      row.sigma_shadow = p.sigma_shadow;
      row.mean_sym_se = mean;
      row.stderr_se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
      row.n_realizations = v.size();
      row.mode = std::string(run_mode_name(cfg.mode));
      row.avg_mu = cfg.schemes[s] == Scheme::rs ? p.avg_mu : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::string> preset_names() { return {"fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5a", "fig5b"}; }

ExperimentConfig figure_preset(std::string_view name) {
  ExperimentConfig c;
  const std::vector<std::uint64_t> moderate{32, 64, 128, 256, 512, 1024};
  if (name == "fig2a") {
    c.antennas = moderate;
  } else if (name == "fig2b") {
    c.antennas = moderate;
    c.precoder.kind = PrecoderKind::rzf;
    c.schemes = {Scheme::snd, Scheme::rs};
  } else if (name == "fig3a") {
    c.antennas = {256};
    c.kappa = {0.0, 0.2, 0.4, 0.6, 0.8};
    c.schemes = {Scheme::tin, Scheme::snd, Scheme::rs};
  } else if (name == "fig3b") {
    c.antennas = {256};
    c.users_per_cell = {2, 4, 6, 8, 10, 12, 15};
    c.schemes = {Scheme::tin, Scheme::snd, Scheme::rs};
  } else if (name == "fig4") {
    c.antennas = {256};
    c.sigma_shadow = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    c.schemes = {Scheme::tin, Scheme::snd, Scheme::rs};
  } else if (name == "fig5a") {
    c.correlation = CorrelationKind::uncorrelated;
    c.antennas = moderate;
  } else if (name == "fig5b") {
    c.correlation = CorrelationKind::uncorrelated;
    c.antennas = {1000, 10000, 100000, 1000000, 10000000, 100000000, 1000000000};
  } else {
    throw std::invalid_argument("figure_preset: unknown preset '" + std::string(name) + "'");
  }
  return c;
}

}  // namespace pcrs
