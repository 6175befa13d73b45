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

#include "pcrs/symrate.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <numeric>

namespace pcrs {

namespace {

// Slack for pruning decisions: relaxation values may undershoot the leaf
// value they bound by a few ulps.
constexpr double kPruneSlack = 1e-10;

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::tin: return "TIN";
    case Scheme::sd: return "SD";
    case Scheme::snd: return "SND";
    case Scheme::rs: return "RS";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "TIN") return Scheme::tin;
  if (upper == "SD") return Scheme::sd;
  if (upper == "SND") return Scheme::snd;
  if (upper == "RS") return Scheme::rs;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

double mac_equal_rate(const MacPolytope& mac, const GainTable& table) {
  double t = std::numeric_limits<double>::infinity();
  for (CellSet w : mac.omegas) {
    t = std::min(t, bound_value(table, mac.receiver, mac.decode, w) / static_cast<double>(w.size()));
  }
  return t;
}

SymRateReport max_sym_tin(const GainTable& table) {
  const std::size_t L = table.num_cells;
  SymRateReport rep;
  rep.scheme = Scheme::tin;
  rep.rates.resize(L);
  rep.t_star = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < L; ++l) {
    rep.rates[l] = bound_value(table, l, CellSet::single(l), CellSet::single(l));
    rep.t_star = std::min(rep.t_star, rep.rates[l]);
  }
  return rep;
}

SymRateReport max_sym_sd(const GainTable& table) {
  const std::size_t L = table.num_cells;
  SymRateReport rep;
  rep.scheme = Scheme::sd;
  rep.t_star = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < L; ++l) {
    rep.t_star = std::min(rep.t_star, mac_equal_rate(build_mac_polytope(l, CellSet::all(L)), table));
  }
  rep.rates.assign(L, rep.t_star);
  return rep;
}

SymRateReport max_sym_snd(const GainTable& table) {
  const std::size_t L = table.num_cells;
  SymRateReport rep;
  rep.scheme = Scheme::snd;
  rep.t_star = std::numeric_limits<double>::infinity();
  const std::uint64_t radix = std::uint64_t{1} << (L - 1);
  for (std::size_t l = 0; l < L; ++l) {
    const std::vector<CellSet> sets = enumerate_snd_sets(l, L);
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t e = 0; e < sets.size(); ++e) {
      const double t = mac_equal_rate(build_mac_polytope(l, sets[e]), table);
      if (t > best) {
        best = t;
        arg = e;
      }
    }
    rep.winning_combo = rep.winning_combo * radix + arg;
    rep.t_star = std::min(rep.t_star, best);
  }
  rep.rates.assign(L, rep.t_star);
  return rep;
}

SymRateReport max_sym_snd_product(const GainTable& table) {
  const std::size_t L = table.num_cells;
  if (L > 3) throw std::invalid_argument("max_sym_snd_product: oracle limited to three cells");
  std::vector<std::vector<MacPolytope>> macs(L);
  std::vector<std::vector<std::vector<double>>> rhs(L);
  for (std::size_t l = 0; l < L; ++l) {
    for (CellSet s : enumerate_snd_sets(l, L)) {
      macs[l].push_back(build_mac_polytope(l, s));
      rhs[l].push_back(macs[l].back().rhs(table));
    }
  }
  const std::size_t F = macs[0].size();
  std::uint64_t total = 1;
  for (std::size_t l = 0; l < L; ++l) total *= F;

  SymRateReport rep;
  rep.scheme = Scheme::snd;
  rep.t_star = -1.0;
  std::vector<std::size_t> choice(L);
  for (std::uint64_t n = 0; n < total; ++n) {
    std::uint64_t c = n;
    for (std::size_t l = L; l-- > 0;) {
      choice[l] = c % F;
      c /= F;
    }
    LpProblem p(L + 1);
    p.objective[L] = 1.0;
    for (std::size_t l = 0; l < L; ++l) {
      const MacPolytope& mac = macs[l][choice[l]];
      for (std::size_t q = 0; q < mac.omegas.size(); ++q) {
        double* row = p.add_row(rhs[l][choice[l]][q]);
        for (std::size_t j = 0; j < L; ++j) {
          if (mac.omegas[q].contains(j)) row[j] = 1.0;
        }
      }
      double* couple = p.add_row(0.0);
      couple[L] = 1.0;
      couple[l] = -1.0;
    }
    const LpResult r = solve_lp(p);
    if (r.value > rep.t_star) {
      rep.t_star = r.value;
      rep.winning_combo = n;
      rep.rates.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(L));
    }
  }
  return rep;
}

std::uint64_t RsFamily::num_combos() const {
  std::uint64_t n = 1;
  for (const auto& f : per_receiver) n *= f.size();
  return n;
}

RsFamily make_rs_family(std::size_t num_cells, RsFamilyKind kind) {
  RsFamily fam;
  fam.num_cells = num_cells;
  fam.kind = kind;
  fam.per_receiver.resize(num_cells);
  for (std::size_t l = 0; l < num_cells; ++l) {
    const std::vector<DecodeSet> sets =
        kind == RsFamilyKind::full ? enumerate_rs_sets(l, num_cells) : enumerate_rs_sub_sets(l, num_cells);
    for (const DecodeSet& d : sets) fam.per_receiver[l].push_back(build_modified_mac_polytope(d));
  }
  return fam;
}

namespace {

struct Row {
  std::uint32_t mask;
  double rhs;
};
using RowList = std::vector<Row>;

// Drops rows implied by another row of the same list: a row whose layer set
// contains ours with a right-hand side no larger. All coefficients are 0/1
// and rates are nonnegative, so the implied row is redundant.
RowList reduce_rows(const RowList& rows) {
  RowList out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool dominated = false;
    for (std::size_t k = 0; k < rows.size() && !dominated; ++k) {
      if (k == i) continue;
      const bool superset = (rows[i].mask & ~rows[k].mask) == 0;
      if (!superset || rows[k].rhs > rows[i].rhs) continue;
      // Identical rows: keep the first copy only.
      dominated = rows[k].mask != rows[i].mask || rows[k].rhs != rows[i].rhs || k < i;
    }
    if (!dominated) out.push_back(rows[i]);
  }
  return out;
}

// rows[l][e]: bound rows of family element e at receiver l for one mu.
std::vector<std::vector<RowList>> bind_rows(const GainTable& table, double mu, const RsFamily& family) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("f_mu: mu outside [0, 1]");
  if (family.num_cells != table.num_cells) throw std::invalid_argument("f_mu: family/table size mismatch");
  const LayeredGainTable layered{&table, mu};
  std::vector<std::vector<RowList>> rows(family.num_cells);
  for (std::size_t l = 0; l < family.num_cells; ++l) {
    for (const RegionPolytope& poly : family.per_receiver[l]) {
      RowList list;
      list.reserve(poly.constraints.size());
      for (const LinearConstraint& c : poly.constraints) list.push_back({c.decoded.bits(), c.rhs(layered)});
      rows[l].push_back(reduce_rows(list));
    }
  }
  return rows;
}

// max t s.t. the given row lists, t <= R_ja + R_jb for every cell whose two
// layers are both constrained (other cells can take arbitrarily large rates).
LpResult solve_rows(std::size_t L, std::span<const RowList* const> lists) {
  LpProblem p(2 * L + 1);
  p.objective[2 * L] = 1.0;
  std::uint32_t used = 0;
  for (const RowList* list : lists) {
    for (const Row& r : *list) {
      double* row = p.add_row(r.rhs);
      for (std::size_t bit = 0; bit < 2 * L; ++bit) {
        if ((r.mask >> bit) & 1u) row[bit] = 1.0;
      }
      used |= r.mask;
    }
  }
  for (std::size_t j = 0; j < L; ++j) {
    if (!LayerSet::pair(j).subset_of(LayerSet(used))) continue;
    double* row = p.add_row(0.0);
    row[2 * L] = 1.0;
    row[2 * j] = -1.0;
    row[2 * j + 1] = -1.0;
  }
  return solve_lp(p);
}

struct Best {
  bool any = false;
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t combo = 0;
  std::vector<double> rates;
  std::uint64_t solves = 0;

  void offer(double v, std::uint64_t n, const std::vector<double>& x) {
    if (!any || v > value || (v == value && n < combo)) {
      any = true;
      value = v;
      combo = n;
      rates = x;
    }
  }
  void merge(const Best& o) {
    solves += o.solves;
    if (o.any) offer(o.value, o.combo, o.rates);
  }
};

void atomic_max(std::atomic<double>& a, double v) {
  double cur = a.load(std::memory_order_relaxed);
  while (v > cur && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
  }
}

class ComboSearch {
 public:
  ComboSearch(std::size_t L, const std::vector<std::vector<RowList>>& rows, bool prune, double floor)
      : L_(L), rows_(rows), prune_(prune), incumbent_(floor), order_(L), h_(L), stride_(L, 1) {
    for (std::size_t l = L; l-- > 1;) stride_[l - 1] = stride_[l] * rows_[l].size();
    for (std::size_t l = 0; l < L; ++l) {
      const std::size_t F = rows_[l].size();
      h_[l].resize(F);
      order_[l].resize(F);
      std::iota(order_[l].begin(), order_[l].end(), std::size_t{0});
      if (!prune_) continue;
      for (std::size_t e = 0; e < F; ++e) {
        const RowList* one[] = {&rows_[l][e]};
        h_[l][e] = solve_rows(L_, one).value;
        ++setup_solves_;
      }
      std::stable_sort(order_[l].begin(), order_[l].end(),
                       [&](std::size_t a, std::size_t b) { return h_[l][a] > h_[l][b]; });
    }
  }

  Best run(bool parallel) {
    const std::size_t F0 = rows_[0].size();
    std::vector<Best> partial(F0);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::size_t pos = 0; pos < F0; ++pos) {
      const std::size_t e = order_[0][pos];
      const double ub = prune_ ? h_[0][e] : std::numeric_limits<double>::infinity();
      if (prune_ && ub < incumbent_.load(std::memory_order_relaxed) - kPruneSlack) continue;
      std::vector<const RowList*> chosen(L_, nullptr);
      chosen[0] = &rows_[0][e];
      dfs(1, e * stride_[0], ub, chosen, partial[pos]);
    }
    Best best;
    best.solves = setup_solves_;
    for (const Best& b : partial) best.merge(b);
    return best;
  }

 private:
  void dfs(std::size_t depth, std::uint64_t prefix, double ub, std::vector<const RowList*>& chosen, Best& best) {
    if (depth == L_) {
      const LpResult r = solve_rows(L_, chosen);
      ++best.solves;
      best.offer(r.value, prefix, r.x);
      atomic_max(incumbent_, r.value);
      return;
    }
    for (std::size_t e : order_[depth]) {
      double child_ub = ub;
      if (prune_) {
        child_ub = std::min(ub, h_[depth][e]);
        // Children are sorted by h, so no later sibling can do better.
        if (child_ub < incumbent_.load(std::memory_order_relaxed) - kPruneSlack) break;
      }
      chosen[depth] = &rows_[depth][e];
      const std::uint64_t n = prefix + e * stride_[depth];
      if (prune_ && depth + 1 < L_) {
        const std::span<const RowList* const> part(chosen.data(), depth + 1);
        const double v = solve_rows(L_, part).value;
        ++best.solves;
        if (v < incumbent_.load(std::memory_order_relaxed) - kPruneSlack) continue;
        child_ub = std::min(child_ub, v);
      }
      dfs(depth + 1, n, child_ub, chosen, best);
    }
    chosen[depth] = nullptr;
  }

  std::size_t L_;
  const std::vector<std::vector<RowList>>& rows_;
  bool prune_;
  std::atomic<double> incumbent_;
  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::vector<double>> h_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t setup_solves_ = 0;
};

FmuResult to_result(const Best& best, double floor) {
  FmuResult res;
  res.lp_solves = best.solves;
  if (best.any && best.value >= floor - kPruneSlack) {
    res.found = true;
    res.value = best.value;
    res.combo = best.combo;
    res.rates.assign(best.rates.begin(), best.rates.end() - 1);
  }
  return res;
}

}  // namespace

FmuResult f_mu(const GainTable& table, double mu, const RsFamily& family, const FmuOptions& options) {
  const auto rows = bind_rows(table, mu, family);
  ComboSearch search(family.num_cells, rows, options.prune, options.floor);
  return to_result(search.run(options.parallel), options.floor);
}

FmuResult f_mu_bruteforce(const GainTable& table, double mu, const RsFamily& family) {
  const auto rows = bind_rows(table, mu, family);
  const std::size_t L = family.num_cells;
  const std::uint64_t total = family.num_combos();
  Best best;
  std::vector<const RowList*> chosen(L);
  for (std::uint64_t n = 0; n < total; ++n) {
    std::uint64_t c = n;
    for (std::size_t l = L; l-- > 0;) {
      const std::size_t F = rows[l].size();
      chosen[l] = &rows[l][c % F];
      c /= F;
    }
    const LpResult r = solve_rows(L, chosen);
    ++best.solves;
    best.offer(r.value, n, r.x);
  }
  return to_result(best, -std::numeric_limits<double>::infinity());
}

LpResult solve_combo_lp(const GainTable& table, double mu, const RsFamily& family,
                        std::span<const std::size_t> choice) {
  if (choice.size() != family.num_cells) throw std::invalid_argument("solve_combo_lp: one choice per receiver");
  const auto rows = bind_rows(table, mu, family);
  std::vector<const RowList*> chosen(family.num_cells);
  for (std::size_t l = 0; l < family.num_cells; ++l) chosen[l] = &rows[l].at(choice[l]);
  return solve_rows(family.num_cells, chosen);
}

std::vector<double> mu_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("mu_grid: step must be in (0, 1]");
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double mu = static_cast<double>(k) * step;
    if (mu >= 1.0 - 1e-12) break;
    grid.push_back(mu);
  }
  grid.push_back(1.0);
  return grid;
}

SymRateReport rs_lower_bound(const GainTable& table, std::span<const double> grid, const SymRateReport& snd,
                             const RsFamily& family, const FmuOptions& options) {
  const std::size_t L = table.num_cells;
  // Line search over the grid for g(I) = max_mu f(mu, I); later points only
  // need to beat the best value found so far.
  FmuResult best;
  double best_mu = 0.0;
  for (double mu : grid) {
    FmuOptions opts = options;
    if (best.found) opts.floor = std::max(opts.floor, best.value);
    FmuResult r = f_mu(table, mu, family, opts);
    if (r.found && (!best.found || r.value > best.value)) {
      best = std::move(r);
      best_mu = mu;
    }
  }

  SymRateReport rep;
  rep.scheme = Scheme::rs;
  rep.winning_mu = best_mu;
  if (best.found && best.value > snd.t_star) {
    rep.t_star = best.value;
    rep.winning_combo = best.combo;
    rep.rates = best.rates;
  } else {
    // SND is a special case of RS (inner layers only).
    rep.t_star = snd.t_star;
    rep.rates.assign(2 * L, 0.0);
    for (std::size_t l = 0; l < L && l < snd.rates.size(); ++l) rep.rates[2 * l + 1] = snd.rates[l];
  }
  return rep;
}

SymRateReport rs_lower_bound_avgmu(const GainTable& table, double avg_mu, const SymRateReport& snd,
                                   const RsFamily& family, const FmuOptions& options) {
  const double grid[] = {std::clamp(avg_mu, 0.0, 1.0)};
  return rs_lower_bound(table, grid, snd, family, options);
}

AvgMuTable average_mu(std::span<const std::pair<std::string, double>> training) {
  if (training.empty()) throw std::invalid_argument("average_mu: empty training set");
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& [key, mu] : training) {
    auto& a = acc[key];
    a.first += mu;
    a.second += 1;
  }
  AvgMuTable table;
  for (const auto& [key, a] : acc) table.values[key] = std::clamp(a.first / static_cast<double>(a.second), 0.0, 1.0);
  return table;
}

}  // namespace pcrs
