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

// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset (e.g. `pcrs_acceptance 1 4 5`).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcrs/channel.hpp"
#include "pcrs/geometry.hpp"
#include "pcrs/harness.hpp"
#include "pcrs/link_bounds.hpp"
#include "pcrs/lp.hpp"
#include "pcrs/rate_regions.hpp"
#include "pcrs/symrate.hpp"

using namespace pcrs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string pct(double ratio) { return fmt("%.1f%%", 100.0 * (ratio - 1.0)); }

GainTable random_table(std::size_t L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> own(1.0, 30.0);
  std::uniform_real_distribution<double> cross(0.0, 1.5);
  std::uniform_real_distribution<double> noise(0.5, 2.0);
  GainTable t(L);
  for (std::size_t l = 0; l < L; ++l) {
    t.noise_equiv[l] = noise(rng);
    for (std::size_t j = 0; j < L; ++j) t.signal(l, j) = j == l ? own(rng) : cross(rng) * own(rng);
  }
  return t;
}

// ---------------------------------------------------------------------------
// 1. Two-cell modified MAC constraint lists.

LayerSet layers(std::initializer_list<const char*> names) {
  LayerSet s;
  for (const char* n : names) s = s | LayerSet::of({static_cast<std::size_t>(n[0] - '1'), n[1] == 'a' ? Layer::a : Layer::b});
  return s;
}

Outcome criterion1() {
  struct Golden {
    LayerSet omega;
    std::vector<LayerSet> kept;
  };
  const std::vector<Golden> golden{
      {layers({"1a", "1b"}), {layers({"1a"}), layers({"1a", "1b"})}},
      {layers({"1a", "1b", "2b"}),
       {layers({"1a"}), layers({"1a", "1b"}), layers({"1a", "2b"}), layers({"1a", "1b", "2b"})}},
      {LayerSet::all(2),
       {layers({"1a"}), layers({"1a", "1b"}), layers({"1a", "2a"}), layers({"1a", "1b", "2a"}),
        layers({"1a", "2a", "2b"}), layers({"1a", "1b", "2a", "2b"})}},
  };
  bool ok = true;
  std::string counts;
  for (const Golden& g : golden) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> want, got;
    for (LayerSet d : g.kept) want.insert({d.bits(), g.omega.minus(d).bits()});
    const RegionPolytope r = build_modified_mac_polytope({0, g.omega});
    for (const LinearConstraint& c : r.constraints) got.insert({c.decoded.bits(), c.conditioned.bits()});
    ok = ok && got == want && r.constraints.size() == want.size();
    counts += (counts.empty() ? "" : "/") + std::to_string(r.constraints.size());
  }
  return {ok, "constraint counts " + counts + " (expected 2/4/6), set equality " + (ok ? "holds" : "violated")};
}

// ---------------------------------------------------------------------------
// 2. Region ordering on random instances.

Outcome criterion2() {
  std::mt19937_64 rng(2024);
  const std::vector<double> grid = mu_grid(0.02);
  const RsFamily full2 = make_rs_family(2, RsFamilyKind::full);
  const RsFamily full3 = make_rs_family(3, RsFamilyKind::full);
  int violations = 0;
  double worst_remark = 0.0;
  for (int n = 0; n < 200; ++n) {
    const std::size_t L = n % 2 == 0 ? 2 : 3;
    const RsFamily& fam = L == 2 ? full2 : full3;
    const GainTable t = random_table(L, rng);
    const double tin = max_sym_tin(t).t_star;
    const double sd = max_sym_sd(t).t_star;
    const SymRateReport snd = max_sym_snd(t);
    const double rs = rs_lower_bound(t, grid, snd, fam).t_star;
    if (!(rs >= snd.t_star - 1e-8 && snd.t_star >= std::max(tin, sd) - 1e-8)) ++violations;
    worst_remark = std::max(worst_remark, std::abs(f_mu(t, 0.0, fam).value - snd.t_star));
  }
  const bool ok = violations == 0 && worst_remark <= 1e-6;
  return {ok, "200 instances, ordering violations " + std::to_string(violations) +
                  ", max |RS(mu=0, full) - SND| = " + fmt("%.2e", worst_remark)};
}

// ---------------------------------------------------------------------------
// 3. LP against grid search; SND decomposition against the product LP.

// Max-min LP for one pair of SND decode sets, variables (t, R1, R2).
double snd_combo_lp(const std::vector<const MacPolytope*>& macs, const GainTable& t) {
  LpProblem p(3);
  p.objective[0] = 1.0;
  for (const MacPolytope* m : macs) {
    const std::vector<double> rhs = m->rhs(t);
    for (std::size_t i = 0; i < m->omegas.size(); ++i) {
      double* a = p.add_row(rhs[i]);
      for (std::size_t j = 0; j < 2; ++j) a[1 + j] = m->omegas[i].contains(j) ? 1.0 : 0.0;
    }
  }
  for (std::size_t j = 0; j < 2; ++j) {
    double* a = p.add_row(0.0);
    a[0] = 1.0;
    a[1 + j] = -1.0;
  }
  return solve_lp(p).value;
}

double snd_combo_grid(const std::vector<const MacPolytope*>& macs, const GainTable& t, double range,
                      double step) {
  std::vector<std::pair<std::vector<double>, std::vector<CellSet>>> rows;
  for (const MacPolytope* m : macs) rows.push_back({m->rhs(t), m->omegas});
  const int n = static_cast<int>(std::round(range / step));
  double best = 0.0;
  for (int a = 0; a <= n; ++a) {
    const double r1 = a * step;
    // For fixed R1 the best R2 is found by scanning up from R1 (only min(R1, R2) matters).
    for (int b = a; b >= 0; --b) {
      const double r2 = b * step;
      bool feasible = true;
      for (const auto& [rhs, om] : rows) {
        for (std::size_t i = 0; i < om.size() && feasible; ++i) {
          const double lhs = (om[i].contains(0) ? r1 : 0.0) + (om[i].contains(1) ? r2 : 0.0);
          feasible = lhs <= rhs[i] + 1e-12;
        }
      }
      if (feasible) {
        best = std::max(best, std::min(r1, r2));
        break;
      }
    }
  }
  return best;
}

Outcome criterion3() {
  std::mt19937_64 rng(303);
  double worst_grid = 0.0;
  double worst_cell = 0.0;
  double worst_product = 0.0;
  bool ok = true;
  for (int n = 0; n < 50; ++n) {
    const GainTable t = random_table(2, rng);
    std::vector<MacPolytope> per0, per1;
    for (CellSet s : enumerate_snd_sets(0, 2)) per0.push_back(build_mac_polytope(0, s));
    for (CellSet s : enumerate_snd_sets(1, 2)) per1.push_back(build_mac_polytope(1, s));
    double best_lp = -1.0;
    for (const MacPolytope& a : per0) {
      for (const MacPolytope& b : per1) {
        const std::vector<const MacPolytope*> macs{&a, &b};
        const double lp = snd_combo_lp(macs, t);
        double range = 0.0;
        for (const MacPolytope* m : macs) {
          for (double r : m->rhs(t)) range = std::max(range, r);
        }
        const double step = 1e-3 * range;
        const double grid = snd_combo_grid(macs, t, range, step);
        const double err = std::abs(lp - grid);
        worst_grid = std::max(worst_grid, err / step);
        worst_cell = std::max(worst_cell, err);
        if (err > step) ok = false;
        best_lp = std::max(best_lp, lp);
      }
    }
    const double decomposition = max_sym_snd(t).t_star;
    const double product = max_sym_snd_product(t).t_star;
    worst_product = std::max({worst_product, std::abs(decomposition - product), std::abs(decomposition - best_lp)});
  }
  ok = ok && worst_product <= 1e-8;
  return {ok, "50 instances x 4 combos: max |LP - grid| = " + fmt("%.3f", worst_grid) +
                  " grid cells; max |decomposition - product LP| = " + fmt("%.1e", worst_product)};
}

// ---------------------------------------------------------------------------
// 4. Monte Carlo against the closed form.

Outcome criterion4() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  FadingTensor beta(2, 4);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t l = 0; l < 2; ++l) beta(j, k, l) = j == l ? 1.0 : u(rng);
    }
  }
  const LinkSet links(beta, LinkTensor(2, 4, 0.0), {CorrelationKind::uncorrelated, 0.0});
  McOptions opts;
  opts.num_samples = 2000;
  opts.seed = 4;
  const double rho_p = 20.0, rho_dl = 10.0;
  const std::vector<GainTable> mc = gain_tables_mc(links, {}, rho_p, rho_dl, 32, opts);
  const std::vector<GainTable> cf = gain_tables_closed_zf(beta, rho_p, rho_dl, 32);
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t l = 0; l < 2; ++l) {
      for (std::size_t j = 0; j < 2; ++j) {
        worst = std::max(worst, std::abs(mc[i].signal(l, j) / cf[i].signal(l, j) - 1.0));
      }
      worst = std::max(worst, std::abs(mc[i].noise_equiv[l] / cf[i].noise_equiv[l] - 1.0));
    }
  }

  // E[x^H x] / K with x = W s / sqrt(lambda_closed), averaged over channel draws.
  FadingTensor beta15(2, 15);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 15; ++k) {
      for (std::size_t l = 0; l < 2; ++l) beta15(j, k, l) = j == l ? u(rng) + 0.5 : 0.3 * u(rng);
    }
  }
  const std::vector<double> lambda = lambda_zf_closed(beta15, rho_p, 64);
  const LinkSet links15(beta15, LinkTensor(2, 15, 0.0), {CorrelationKind::uncorrelated, 0.0});
  Rng draw(44);
  double worst_power = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<CMatrix> own(2);
    double power = 0.0;
    const int draws = 500;
    for (int n = 0; n < draws; ++n) {
      CMatrix Ghat(64, 15);
      for (std::size_t k = 0; k < 15; ++k) {
        std::vector<CMatrix> R;
        for (std::size_t l = 0; l < 2; ++l) R.push_back(links15.matrix(j, k, l, 64));
        const std::vector<CVector> ch = draw_channels(R, draw);
        Ghat.col(static_cast<Eigen::Index>(k)) = mmse_filter_apply(pilot_observation(ch, rho_p, draw), R, j, rho_p);
      }
      const CMatrix W = zf_precoder(Ghat);
      power += W.squaredNorm() / (15.0 * lambda[j]);
    }
    worst_power = std::max(worst_power, std::abs(power / draws - 1.0));
  }
  const bool ok = worst <= 0.03 && worst_power <= 0.01;
  return {ok, "max relative table error " + fmt("%.2f%%", 100.0 * worst) + " (<= 3%), E[x^H x]/K deviation " +
                  fmt("%.2f%%", 100.0 * worst_power) + " (<= 1%)"};
}

// ---------------------------------------------------------------------------
// 5. MMSE identities.

Outcome criterion5() {
  Rng rng(505);
  double worst_identity = 0.0;
  for (int n = 0; n < 100; ++n) {
    const std::size_t M = 2 + static_cast<std::size_t>(n % 6);
    const std::size_t L = 1 + static_cast<std::size_t>(n % 4);
    std::vector<CMatrix> R;
    for (std::size_t l = 0; l < L; ++l) {
      CMatrix A(M, M);
      for (std::size_t a = 0; a < M; ++a) {
        for (std::size_t b = 0; b < M; ++b) A(a, b) = complex_normal(rng);
      }
      R.push_back(A * A.adjoint());
    }
    const double rho_p = std::pow(10.0, static_cast<double>(n % 5) - 1.0);
    const EstimationStats s = estimate_stats_correlated(R, 0, rho_p);
    worst_identity = std::max(worst_identity, (s.est_cov + s.err_cov - R[0]).cwiseAbs().maxCoeff() /
                                                  R[0].cwiseAbs().maxCoeff());
  }

  const std::size_t M = 4;
  const std::vector<CMatrix> links{exp_correlation_matrix(0.6, 0.4, M, 1.0), exp_correlation_matrix(0.3, 2.0, M, 0.5),
                                   exp_correlation_matrix(0.8, -1.0, M, 0.2)};
  const double rho_p = 3.0;
  const EstimationStats s = estimate_stats_correlated(links, 0, rho_p);
  CMatrix cov = CMatrix::Zero(M, M);
  const int draws = 100000;
  for (int n = 0; n < draws; ++n) {
    const std::vector<CVector> ch = draw_channels(links, rng);
    const CVector g = mmse_filter_apply(pilot_observation(ch, rho_p, rng), links, 0, rho_p);
    cov += g * g.adjoint();
  }
  cov /= static_cast<double>(draws);
  double worst_cov = 0.0;
  for (std::size_t a = 0; a < M; ++a) {
    for (std::size_t b = 0; b < M; ++b) {
      worst_cov = std::max(worst_cov, std::abs(cov(a, b) - s.est_cov(a, b)) / std::abs(s.est_cov(a, b)));
    }
  }
  const bool ok = worst_identity <= 1e-12 && worst_cov <= 0.05;
  return {ok, "max |est + err - R| / max|R| = " + fmt("%.1e", worst_identity) + ", worst entrywise covariance error " +
                  fmt("%.2f%%", 100.0 * worst_cov)};
}

// ---------------------------------------------------------------------------
// 6-9. Harness-level checks.

std::map<std::pair<std::string, std::uint64_t>, double> by_scheme_m(const std::vector<ResultRow>& rows) {
  std::map<std::pair<std::string, std::uint64_t>, double> out;
  for (const ResultRow& r : rows) out[{r.scheme, r.M}] = r.mean_sym_se;
  return out;
}

Outcome criterion7_uncached() {
  ExperimentConfig c = figure_preset("fig5b");
  c.antennas = {1000, 10000, 100000, 1000000, 10000000, 100000000, 1000000000};
  c.realizations = 10;
  c.ic_mode = IcMode::representative;
  c.mode = RunMode::optimize_mu;
  const auto se = by_scheme_m(run_sweep(c));
  const double tin6 = se.at({"TIN", 1000000}), tin8 = se.at({"TIN", 100000000});
  const double tin_change = std::abs(tin8 / tin6 - 1.0);
  const bool below = se.at({"SD", 10000000}) <= se.at({"TIN", 10000000});
  const bool above = se.at({"SD", 1000000000}) > se.at({"TIN", 1000000000});
  bool increasing = true;
  for (const char* s : {"SD", "SND", "RS"}) {
    for (std::size_t i = 1; i < c.antennas.size(); ++i) {
      increasing = increasing && se.at({s, c.antennas[i]}) > se.at({s, c.antennas[i - 1]});
    }
  }
  std::ostringstream os;
  os << "TIN change 1e6->1e8 " << fmt("%.3f%%", 100.0 * tin_change) << "; SD vs TIN at 1e7 "
     << fmt("%.2f", se.at({"SD", 10000000})) << "/" << fmt("%.2f", se.at({"TIN", 10000000})) << ", at 1e9 "
     << fmt("%.2f", se.at({"SD", 1000000000})) << "/" << fmt("%.2f", se.at({"TIN", 1000000000}))
     << "; SD/SND/RS strictly increasing: " << (increasing ? "yes" : "no");
  return {tin_change < 0.01 && below && above && increasing, os.str()};
}

// Criterion 6 falls back on this suite, so it is evaluated at most once.
Outcome criterion7() {
  static const Outcome cached = criterion7_uncached();
  return cached;
}

Outcome criterion6() {
  ExperimentConfig c = figure_preset("fig5a");
  c.antennas = {128, 256, 1024};
  c.realizations = 30;
  c.ic_mode = IcMode::representative;
  c.mode = RunMode::avg_mu;
  const auto se = by_scheme_m(run_sweep(c));
  const std::map<std::uint64_t, std::pair<double, double>> targets{{128, {0.45, 1.00}}, {256, {0.61, 1.25}},
                                                                   {1024, {0.94, 1.70}}};
  bool absolute = true;
  std::ostringstream os;
  for (const auto& [M, tg] : targets) {
    const double tin = se.at({"TIN", M});
    const double snd_gain = se.at({"SND", M}) / tin - 1.0;
    const double rs_gain = se.at({"RS", M}) / tin - 1.0;
    absolute = absolute && std::abs(snd_gain - tg.first) <= 0.12 && rs_gain >= tg.second;
    os << "M=" << M << " SND/TIN +" << fmt("%.0f%%", 100.0 * snd_gain) << " RS/TIN +"
       << fmt("%.0f%%", 100.0 * rs_gain) << "; ";
  }
  if (absolute) return {true, os.str() + "absolute gain targets met"};
  // Stated fallback: the ordering and asymptotic suite, with the deviation documented.
  const Outcome fallback = criterion7();
  os << "absolute gain targets NOT met; fallback (ordering + asymptotic suite) "
     << (fallback.pass ? "passed" : "failed");
  return {fallback.pass, os.str()};
}

Outcome criterion8() {
  ExperimentConfig base;
  base.antennas = {256};
  base.realizations = 15;
  base.training_realizations = 5;
  base.mc_channel_samples = 200;
  base.ic_mode = IcMode::representative;
  base.schemes = {Scheme::tin, Scheme::snd, Scheme::rs};
  std::ostringstream os;
  bool ok = true;
  auto series = [&](ExperimentConfig c, auto key) {
    std::map<double, std::map<std::string, double>> out;
    for (const ResultRow& r : run_sweep(c)) out[key(r)][r.scheme] = r.mean_sym_se;
    return out;
  };
  const char* schemes[] = {"TIN", "SND", "RS"};

  ExperimentConfig ck = base;
  ck.kappa = {0.0, 0.4, 0.8};
  const auto kap = series(ck, [](const ResultRow& r) { return r.kappa; });
  bool kappa_ok = true;
  for (const char* s : schemes) kappa_ok = kappa_ok && kap.at(0.0).at(s) <= kap.at(0.4).at(s) && kap.at(0.4).at(s) <= kap.at(0.8).at(s);
  os << "kappa nondecreasing " << (kappa_ok ? "yes" : "no");

  ExperimentConfig cK = base;
  cK.users_per_cell = {2, 8, 15};
  const auto users = series(cK, [](const ResultRow& r) { return static_cast<double>(r.K); });
  bool k_ok = true;
  for (const char* s : schemes) k_ok = k_ok && users.at(2).at(s) >= users.at(8).at(s) && users.at(8).at(s) >= users.at(15).at(s);
  os << "; K nonincreasing " << (k_ok ? "yes" : "no") << " (";
  for (const char* s : schemes) {
    os << s << " " << users.at(2).at(s) << "/" << users.at(8).at(s) << "/" << users.at(15).at(s)
       << (s == schemes[2] ? ")" : ", ");
  }

  ExperimentConfig cs = base;
  cs.sigma_shadow = {0.0, 3.0, 5.0};
  const auto sh = series(cs, [](const ResultRow& r) { return r.sigma_shadow; });
  bool s_ok = true;
  for (const char* s : schemes) s_ok = s_ok && sh.at(0.0).at(s) >= sh.at(3.0).at(s) && sh.at(3.0).at(s) >= sh.at(5.0).at(s);
  bool gain_ok = true;
  for (const char* s : {"SND", "RS"}) {
    const double g0 = sh.at(0.0).at(s) / sh.at(0.0).at("TIN");
    const double g3 = sh.at(3.0).at(s) / sh.at(3.0).at("TIN");
    const double g5 = sh.at(5.0).at(s) / sh.at(5.0).at("TIN");
    gain_ok = gain_ok && g0 < g3 && g3 < g5;
    os << "; " << s << "/TIN at sigma 0/3/5: " << pct(g0) << "/" << pct(g3) << "/" << pct(g5);
  }
  os << "; sigma nonincreasing " << (s_ok ? "yes" : "no") << ", gains increasing " << (gain_ok ? "yes" : "no");
  ok = kappa_ok && k_ok && s_ok && gain_ok;
  return {ok, os.str()};
}

Outcome criterion9() {
  ExperimentConfig c;
  c.num_cells = 3;
  c.antennas = {128, 256};
  c.realizations = 30;
  c.training_realizations = 30;
  c.mc_channel_samples = 200;
  c.seed = 909;
  c.schemes = {Scheme::rs};
  c.ic_mode = IcMode::representative;
  c.mode = RunMode::avg_mu;
  const auto avg = by_scheme_m(run_sweep(c));
  c.mode = RunMode::optimize_mu;
  const auto opt = by_scheme_m(run_sweep(c));
  bool ok = true;
  std::ostringstream os;
  for (std::uint64_t M : c.antennas) {
    const double loss = 1.0 - avg.at({"RS", M}) / opt.at({"RS", M});
    ok = ok && loss <= 0.03;
    os << "M=" << M << " avg-mu " << fmt("%.3f", avg.at({"RS", M})) << " vs optimized " << fmt("%.3f", opt.at({"RS", M}))
       << " (loss " << fmt("%.2f%%", 100.0 * loss) << "); ";
  }
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> all{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& [id, fn] : all) {
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s  %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
