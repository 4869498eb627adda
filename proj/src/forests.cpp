#include "tripack/forests.hpp"

#include "tripack/factorization.hpp"
#include "tripack/matching.hpp"
#include "tripack/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tripack {

void AuditReport::add(std::string name, double measured, double bound,
                      bool hard, bool upper) {
  AuditEntry e;
  e.name = std::move(name);
  e.measured = measured;
  e.bound = bound;
  e.upper = upper;
  e.hard = hard;
  e.pass = upper ? measured <= bound + 1e-9 : measured >= bound - 1e-9;
  entries.push_back(std::move(e));
}

bool AuditReport::hard_ok() const {
  for (const auto& e : entries)
    if (e.hard && !e.pass) return false;
  return true;
}

bool AuditReport::all_ok() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

const AuditEntry* AuditReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

// one cycle factor merged into few long cycles, then removed from `res`
std::optional<CycleFactor> next_long_factor(ResidualGraph& res, Rng& rng) {
  auto f = extract_one_factor(res, rng.next_u64());
  if (!f) return std::nullopt;
  auto has = [&res](int u, int v) { return res.has_edge(u, v); };
  auto cycles = merge_factor(*f, has, 1);
  std::vector<int> succ(res.vertex_count(), -1);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) succ[c[i]] = c[(i + 1) % c.size()];
  CycleFactor merged(succ);
  res.remove_factor(merged);
  return merged;
}

long long offmodel_count(const CycleFactor& f, const GBetaModel& model) {
  long long c = 0;
  for (auto [u, v] : f.edges())
    if (!model.edge_in_model(u, v)) ++c;
  return c;
}

std::array<std::array<long long, 3>, 3> role_census(const GBetaModel& model,
                                                    std::span<const Edge> edges) {
  std::array<std::array<long long, 3>, 3> c{};
  for (auto [u, v] : edges) c[model.role_of(u)][model.role_of(v)]++;
  return c;
}

}  // namespace

ForestFamily cover_exceptional_gbeta(const TripartiteTournament& g,
                                     const GBetaModel& model,
                                     const CoverParams& p) {
  ForestFamily fam;
  fam.requested = p.ell;
  int n = g.n(), big = 3 * n;
  auto exc = exceptional_vertices(g, model, p.gamma);
  std::vector<char> in_u(big, 0);
  for (int v : exc.vertices) in_u[v] = 1;

  double bad_factor_thr = std::max(1.0, std::pow(p.epsilon, 2.0 / 3.0) * n * p.tol);
  double e1_bound = std::pow(p.epsilon, 1.0 / 3.0) * n * p.tol;
  double max_e = 0;

  Rng rng(p.seed);
  ResidualGraph res(g.graph());
  EdgeBitset family_edges(big);

  while (static_cast<int>(fam.forests.size()) < p.ell) {
    auto fac = next_long_factor(res, rng);
    if (!fac) break;
    if (offmodel_count(*fac, model) > bad_factor_thr) {
      ++fam.discarded_factors;
      continue;
    }

    // prune the factor down to a small forest guarding U^gamma
    std::vector<int> succ(big), pred(big, -1);
    for (int v = 0; v < big; ++v) succ[v] = fac->succ(v);
    for (int v = 0; v < big; ++v) pred[succ[v]] = v;
    auto drop_edge = [&](int u) {
      int v = succ[u];
      succ[u] = -1;
      if (v != -1) pred[v] = -1;
    };
    // (1) V2 -> V3 edges away from U^gamma
    for (int u = 0; u < big; ++u) {
      int v = succ[u];
      if (v == -1) continue;
      if (model.role_of(u) == 1 && model.role_of(v) == 2 && !in_u[u] && !in_u[v])
        drop_edge(u);
    }
    // (2) V2 -> V1 -> V3 two-paths away from U^gamma
    for (int v = 0; v < big; ++v) {
      if (model.role_of(v) != 0 || in_u[v]) continue;
      int u = pred[v], w = succ[v];
      if (u == -1 || w == -1) continue;
      if (model.role_of(u) == 1 && model.role_of(w) == 2 && !in_u[u] && !in_u[w]) {
        drop_edge(u);
        drop_edge(v);
      }
    }
    // (3) drop components with <= 2 edges that do not meet U^gamma
    {
      std::vector<char> seen(big, 0);
      for (int v = 0; v < big; ++v) {
        if (seen[v] || (succ[v] == -1 && pred[v] == -1)) continue;
        int s = v;
        std::vector<int> comp;
        {
          std::vector<char> local(big, 0);
          int x = s;
          while (pred[x] != -1 && !local[x]) {
            local[x] = 1;
            x = pred[x];
          }
          s = x;
        }
        int edges_in_comp = 0;
        bool meets_u = false;
        int x = s;
        while (true) {
          comp.push_back(x);
          seen[x] = 1;
          meets_u = meets_u || in_u[x];
          if (succ[x] == -1 || succ[x] == s) {
            if (succ[x] == s) ++edges_in_comp;
            break;
          }
          ++edges_in_comp;
          x = succ[x];
        }
        if (edges_in_comp <= 2 && !meets_u)
          for (int y : comp) drop_edge(y);
      }
    }

    // assemble; a surviving cycle means this factor is unusable
    std::vector<Edge> kept;
    for (int v = 0; v < big; ++v)
      if (succ[v] != -1) kept.emplace_back(v, succ[v]);
    if (!is_linear_forest(big, kept)) {
      ++fam.discarded_factors;
      continue;
    }
    LinearForest f = forest_from_edges(big, kept);

    // hard per-forest structure
    bool ok = true;
    for (int v : exc.vertices)
      if (f.out_degree(v) != 1 || f.in_degree(v) != 1) ok = false;
    for (int s : f.startpoints())
      if (model.role_of(s) != 2) ok = false;
    for (int e : f.endpoints())
      if (model.role_of(e) != 1) ok = false;
    auto census = role_census(model, kept);
    if (census[2][0] != census[0][1] || census[1][0] != census[0][2]) ok = false;
    if (!ok) {
      ++fam.discarded_factors;
      continue;
    }
    for (auto [u, v] : kept) family_edges.set(u, v);
    max_e = std::max(max_e, static_cast<double>(kept.size()));
    fam.forests.push_back(std::move(f));
  }

  fam.audit.add("exceptional_degree_saturation", 1, 1, true);  // enforced above
  fam.audit.add("startpoints_v3_endpoints_v2", 1, 1, true);
  fam.audit.add("half_balance_equalities", 1, 1, true);
  fam.audit.add("forest_size_max", max_e, e1_bound, false);
  fam.audit.add("family_count", static_cast<double>(fam.forests.size()),
                static_cast<double>(p.ell), true, false);
  fam.ok = fam.audit.hard_ok();
  if (!fam.ok)
    fam.error = "usable cycle factors fell short: have " +
                std::to_string(fam.forests.size()) + " of " + std::to_string(p.ell);
  return fam;
}

ForestFamily cover_exceptional_c3(const TripartiteTournament& g,
                                  const GBetaModel& model, const CoverParams& p) {
  ForestFamily fam;
  fam.requested = p.ell;
  int n = g.n(), big = 3 * n;
  auto exc = exceptional_vertices(g, model, p.gamma);
  std::vector<char> in_u(big, 0);
  for (int v : exc.vertices) in_u[v] = 1;

  double bad_factor_thr = std::max(1.0, std::pow(p.epsilon, 2.0 / 3.0) * n * p.tol);
  double p1_bound = p.gamma * n * p.tol;
  double max_e = 0;

  Rng rng(p.seed);
  ResidualGraph res(g.graph());

  while (static_cast<int>(fam.forests.size()) < p.ell) {
    auto fac = next_long_factor(res, rng);
    if (!fac) break;
    long long ccw_edges = offmodel_count(*fac, model);
    if (ccw_edges > bad_factor_thr) {
      ++fam.discarded_factors;
      continue;
    }

    // keep counterclockwise edges and any edge guarding U^gamma; every cycle
    // must lose at least one clockwise edge
    std::vector<Edge> kept;
    bool usable = true;
    for (const auto& cyc : fac->cycles()) {
      int removed = 0;
      for (size_t i = 0; i < cyc.size(); ++i) {
        int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
        bool keep = !model.edge_in_model(u, v) || in_u[u] || in_u[v];
        if (keep)
          kept.emplace_back(u, v);
        else
          ++removed;
      }
      if (removed == 0) usable = false;
    }
    if (!usable || !is_linear_forest(big, kept)) {
      ++fam.discarded_factors;
      continue;
    }
    LinearForest f = forest_from_edges(big, kept);

    bool ok = true;
    for (int v : exc.vertices)
      if (f.out_degree(v) != 1 || f.in_degree(v) != 1) ok = false;
    auto census = role_census(model, kept);
    // counterclockwise triple exactly equal
    if (!(census[2][1] == census[1][0] && census[1][0] == census[0][2])) ok = false;
    if (!ok) {
      ++fam.discarded_factors;
      continue;
    }
    max_e = std::max(max_e, static_cast<double>(kept.size()));
    fam.forests.push_back(std::move(f));
  }

  fam.audit.add("exceptional_degree_saturation", 1, 1, true);
  fam.audit.add("ccw_balance_exact", 1, 1, true);
  fam.audit.add("forest_size_max", max_e, p1_bound, false);
  fam.audit.add("family_count", static_cast<double>(fam.forests.size()),
                static_cast<double>(p.ell), true, false);
  fam.ok = fam.audit.hard_ok();
  if (!fam.ok)
    fam.error = "usable cycle factors fell short: have " +
                std::to_string(fam.forests.size()) + " of " + std::to_string(p.ell);
  return fam;
}

CleanResult clean_forests(const TripartiteTournament& g, const GBetaModel& model,
                          const ForestFamily& family, const CoverParams& p) {
  CleanResult out;
  int n = g.n(), big = 3 * n;
  int ell = static_cast<int>(family.forests.size());
  double eps = p.epsilon;

  auto exc = exceptional_vertices(g, model, eps);
  std::vector<int> dplus(big, 0), dminus(big, 0);
  EdgeBitset used(big);
  for (const auto& f : family.forests)
    for (auto [u, v] : f.edges()) {
      ++dplus[u];
      ++dminus[v];
      used.set(u, v);
    }
  std::vector<char> in_star(big, 0);
  double star_thr = std::max(1.0, std::pow(eps, 1.0 / 3.0) * n);
  for (int v : exc.vertices) in_star[v] = 1;
  for (int v = 0; v < big; ++v)
    if (std::max(dplus[v], dminus[v]) >= star_thr) in_star[v] = 1;
  for (int v = 0; v < big; ++v)
    if (in_star[v]) out.u_star.push_back(v);

  std::vector<LinearForest> forests(family.forests);
  std::vector<int> member_cnt(big, 0);  // forests fully processed containing v
  double busy_thr = std::max(1.0, std::pow(eps, 0.25) * n * p.tol - 1);
  long long added_total = 0;
  double max_e = 0;
  bool additions_balanced = true;

  for (int m = 0; m < ell; ++m) {
    auto& f = forests[m];
    std::vector<char> avoid(big, 0);
    for (int v = 0; v < big; ++v) {
      if (f.touches(v)) avoid[v] = 1;
      if (in_star[v]) avoid[v] = 1;
      if (member_cnt[v] >= busy_thr) avoid[v] = 1;
    }
    std::array<std::array<long long, 3>, 3> added_census{};

    // append an all-clockwise or all-counterclockwise 3-edge path at v
    auto extend = [&](int v, bool outward) -> bool {
      const auto& gr = g.graph();
      auto span_of = [&](int x) { return outward ? gr.out(x) : gr.in(x); };
      auto edge_ok = [&](int a, int b) {
        int u = outward ? a : b, w = outward ? b : a;
        return model.edge_in_model(u, w) && !used.test(u, w);
      };
      for (int x1 : span_of(v)) {
        if (avoid[x1] || !edge_ok(v, x1)) continue;
        int rv = model.role_of(v), r1 = model.role_of(x1);
        bool cw = outward ? (rv + 1) % 3 == r1 : (r1 + 1) % 3 == rv;
        for (int x2 : span_of(x1)) {
          if (avoid[x2] || x2 == v || !edge_ok(x1, x2)) continue;
          int r2 = model.role_of(x2);
          bool cw2 = outward ? (r1 + 1) % 3 == r2 : (r2 + 1) % 3 == r1;
          if (cw2 != cw) continue;
          for (int x3 : span_of(x2)) {
            if (avoid[x3] || x3 == v || x3 == x1 || !edge_ok(x2, x3)) continue;
            int r3 = model.role_of(x3);
            bool cw3 = outward ? (r2 + 1) % 3 == r3 : (r3 + 1) % 3 == r2;
            if (cw3 != cw) continue;
            // commit
            std::array<Edge, 3> es = outward
                ? std::array<Edge, 3>{{{v, x1}, {x1, x2}, {x2, x3}}}
                : std::array<Edge, 3>{{{x1, v}, {x2, x1}, {x3, x2}}};
            for (auto [a, b] : es) {
              f.add_edge(a, b);
              used.set(a, b);
              ++dplus[a];
              ++dminus[b];
              added_census[model.role_of(a)][model.role_of(b)]++;
              ++added_total;
            }
            avoid[x1] = avoid[x2] = avoid[x3] = 1;
            return true;
          }
        }
      }
      return false;
    };

    for (int v : out.u_star) {
      if (f.out_degree(v) == 0 && !extend(v, true)) {
        out.error = "extension impossible at vertex " + std::to_string(v) +
                    " forest " + std::to_string(m);
        out.family.forests = std::move(forests);
        return out;
      }
      if (f.in_degree(v) == 0 && !extend(v, false)) {
        out.error = "extension impossible at vertex " + std::to_string(v) +
                    " forest " + std::to_string(m);
        out.family.forests = std::move(forests);
        return out;
      }
    }
    // additions are balanced iff the two directional triples are constant
    auto cw = std::array<long long, 3>{added_census[0][1], added_census[1][2],
                                       added_census[2][0]};
    auto ccw = std::array<long long, 3>{added_census[2][1], added_census[1][0],
                                        added_census[0][2]};
    if (!(cw[0] == cw[1] && cw[1] == cw[2] && ccw[0] == ccw[1] && ccw[1] == ccw[2]))
      additions_balanced = false;

    for (int v = 0; v < big; ++v)
      if (f.touches(v)) ++member_cnt[v];
    max_e = std::max(max_e, static_cast<double>(f.edge_count()));
  }

  // audits
  AuditReport& a = out.family.audit;
  a.add("cleaned_size_max", max_e, std::pow(eps, 0.5) * n * p.tol, false);
  a.add("additions_balanced", additions_balanced ? 1 : 0, 1, true, false);
  bool saturated = true;
  double stray_max = 0;
  for (int v = 0; v < big; ++v) {
    int du = 0, dv = 0;
    du = dplus[v];
    dv = dminus[v];
    if (in_star[v]) {
      if (du != ell || dv != ell) saturated = false;
    } else {
      stray_max = std::max(stray_max, static_cast<double>(std::max(du, dv)));
    }
  }
  a.add("u_star_saturation", saturated ? 1 : 0, 1, true, false);
  a.add("non_star_degree_max", stray_max,
        std::max(1.0, std::pow(eps, 0.25) * n * p.tol), false);
  out.family.forests = std::move(forests);
  out.family.requested = ell;
  out.family.ok = a.hard_ok();
  out.ok = out.family.ok;
  return out;
}

HostPartition partition_host(const Digraph& g, const Tripartition& parts,
                             int K, double eta, double tol, uint64_t seed) {
  HostPartition hp;
  int n = parts.n, big = 3 * n;
  if (K < 2) throw InvariantError("host_partition", "K must be >= 2");
  if (n < K * K * K)
    throw InvariantError("host_partition", "need n >= K^3 at desk scale");
  int K2 = K * K, K3 = K2 * K;
  Rng rng(seed);

  // K independent partitions of each class into K^2 near-equal slices
  std::vector<std::vector<int>> slice_of(K, std::vector<int>(big, -1));
  for (int i = 0; i < K; ++i)
    for (int k = 0; k < 3; ++k) {
      std::vector<int> vs(n);
      std::iota(vs.begin(), vs.end(), k * n);
      rng.shuffle(vs);
      int base = n / K2, extra = n % K2, at = 0;
      for (int j = 0; j < K2; ++j) {
        int sz = base + (j < extra ? 1 : 0);
        for (int t = 0; t < sz; ++t) slice_of[i][vs[at++]] = j;
      }
    }

  hp.hosts.assign(K3, HostGraph{});
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K2; ++j) {
      auto& h = hp.hosts[i * K2 + j];
      h.edges = EdgeBitset(big);
      for (int v = 0; v < big; ++v)
        if (slice_of[i][v] == j) {
          h.w_verts.push_back(v);
          h.w_class[parts.class_of(v)].push_back(v);
        }
    }

  // assign every edge to exactly one host
  for (auto [u, v] : g.edges()) {
    int co_host = -1;
    for (int i = 0; i < K && co_host == -1; ++i)
      if (slice_of[i][u] == slice_of[i][v]) co_host = i * K2 + slice_of[i][u];
    if (co_host != -1) {
      hp.hosts[co_host].edges.set(u, v);  // Q edge (collisions kept in first copy)
      continue;
    }
    double r = rng.uniform01();
    if (r < eta) {
      int idx = std::min(2 * K - 1, static_cast<int>(r / (eta / (2 * K))));
      // idx-th host incident to u or v, ascending
      int cnt = 0, target = -1;
      for (int i = 0; i < K && target == -1; ++i) {
        int hu = i * K2 + slice_of[i][u];
        if (cnt++ == idx) target = hu;
      }
      for (int i = 0; i < K && target == -1; ++i) {
        int hv = i * K2 + slice_of[i][v];
        if (cnt++ == idx) target = hv;
      }
      hp.hosts[target].edges.set(u, v);  // E edge
    } else {
      double rr = (r - eta) / (1 - eta);
      int idx = std::min(K3 - 2 * K - 1, static_cast<int>(rr * (K3 - 2 * K)));
      std::array<int, 16> skip{};
      int sc = 0;
      for (int i = 0; i < K; ++i) {
        skip[sc++] = i * K2 + slice_of[i][u];
        skip[sc++] = i * K2 + slice_of[i][v];
      }
      int cnt = 0, target = -1;
      for (int l = 0; l < K3 && target == -1; ++l) {
        bool sk = false;
        for (int s = 0; s < sc; ++s) sk = sk || skip[s] == l;
        if (sk) continue;
        if (cnt++ == idx) target = l;
      }
      hp.hosts[target].edges.set(u, v);  // D edge
    }
  }

  // audits
  long long edge_sum = 0;
  bool p1_ok = true;
  double p2_worst = 0, p4_min = 1e18;
  for (int l = 0; l < K3; ++l) {
    auto& h = hp.hosts[l];
    edge_sum += h.edges.count();
    std::vector<char> in_w(big, 0);
    for (int v : h.w_verts) in_w[v] = 1;
    for (int k = 0; k < 3; ++k) {
      int sz = static_cast<int>(h.w_class[k].size());
      if (std::abs(sz - static_cast<double>(n) / K2) > 1.0 + 1e-9) p1_ok = false;
    }
    // degrees within the host
    std::vector<int> dp(big, 0), dm(big, 0), dpw(big, 0), dmw(big, 0);
    std::array<std::vector<int>, 3> dpk, dmk;
    for (int k = 0; k < 3; ++k) {
      dpk[k].assign(big, 0);
      dmk[k].assign(big, 0);
    }
    for (int u = 0; u < big; ++u)
      for (int v : g.out(u)) {
        if (!h.edges.test(u, v)) continue;
        ++dp[u];
        ++dm[v];
        if (in_w[v]) ++dpw[u];
        if (in_w[u]) ++dmw[v];
        if (in_w[u] && in_w[v]) {
          dpk[parts.class_of(v)][u]++;
          dmk[parts.class_of(u)][v]++;
        }
      }
    // (P2)
    for (int v : h.w_verts)
      for (int k = 0; k < 3; ++k) {
        int wk = static_cast<int>(h.w_class[k].size());
        if (wk == 0) continue;
        double base_out = static_cast<double>(g.out_degree(v)) / 3.0;  // per class
        // exact per-class degree of v in G
        int dgk_out = 0, dgk_in = 0;
        for (int w : g.out(v))
          if (parts.class_of(w) == k) ++dgk_out;
        for (int w : g.in(v))
          if (parts.class_of(w) == k) ++dgk_in;
        (void)base_out;
        double dev_out =
            std::abs(dpk[k][v] - static_cast<double>(dgk_out) / n * wk) / wk;
        double dev_in =
            std::abs(dmk[k][v] - static_cast<double>(dgk_in) / n * wk) / wk;
        p2_worst = std::max({p2_worst, dev_out, dev_in});
      }
    // (P3): X-side degrees (D edges only: both endpoints outside W)
    long long sum = 0;
    int cnt = 0, dmin = 1 << 30, dmax = 0;
    for (int v = 0; v < big; ++v) {
      if (in_w[v]) continue;
      int o = dp[v] - dpw[v], i2 = dm[v] - dmw[v];
      sum += o + i2;
      cnt += 2;
      dmin = std::min({dmin, o, i2});
      dmax = std::max({dmax, o, i2});
    }
    h.r_measured = cnt ? static_cast<int>(std::llround(static_cast<double>(sum) / cnt)) : 0;
    double dev = std::max(std::abs(dmax - h.r_measured), std::abs(h.r_measured - dmin));
    h.audit.add("x_degree_spread", dev, std::pow(n, 4.0 / 7.0) * tol, false);
    double r_lo = (1 - 4 * eta) * n / K3 / tol, r_hi = (1 + 4 * eta) * n / K3 * tol;
    h.audit.add("x_degree_level_low", h.r_measured, r_lo, false, false);
    h.audit.add("x_degree_level_high", h.r_measured, r_hi, false);
    // (P4)
    for (int v = 0; v < big; ++v) {
      if (in_w[v]) continue;
      p4_min = std::min({p4_min, static_cast<double>(dpw[v]),
                         static_cast<double>(dmw[v])});
    }
  }
  hp.audit.add("edge_conservation", static_cast<double>(edge_sum),
               static_cast<double>(g.edge_count()), true, false);
  hp.audit.add("slice_sizes", p1_ok ? 1 : 0, 1, true, false);
  hp.audit.add("w_degree_proportionality", p2_worst, 13.0 / K * tol, false);
  double w_total = 3.0 * n / K2;
  hp.audit.add("x_to_w_degree_min", p4_min, eta * w_total / (30 * K) / tol, false,
               false);
  hp.ok = hp.audit.hard_ok();
  return hp;
}

ForestFamily path_cover(const Digraph& h, std::span<const int> verts, int r,
                        int count, double tol, uint64_t seed) {
  ForestFamily fam;
  fam.requested = count;
  int big = h.vertex_count();
  int m = static_cast<int>(verts.size());
  if (m == 0 || count < 0) {
    fam.error = "empty host";
    return fam;
  }
  std::vector<int> local(big, -1);
  for (int i = 0; i < m; ++i) local[verts[i]] = i;

  // degree precondition, tolerance-relaxed soft audit
  int d_lo = 1 << 30, d_hi = 0;
  for (int v : verts) {
    int o = 0, in = 0;
    for (int w : h.out(v)) o += local[w] != -1;
    for (int w : h.in(v)) in += local[w] != -1;
    d_lo = std::min({d_lo, o, in});
    d_hi = std::max({d_hi, o, in});
  }
  double slack = std::pow(std::max(1, r), 3.0 / 5.0) * tol;
  fam.audit.add("host_min_semidegree", d_lo, r - slack, false, false);
  fam.audit.add("host_max_semidegree", d_hi, r + slack, false);

  // residual adjacency in local ids
  std::vector<std::vector<int>> out_adj(m);
  for (int v : verts)
    for (int w : h.out(v))
      if (local[w] != -1) out_adj[local[v]].push_back(local[w]);

  Rng rng(seed);
  double min_e = m;
  for (int i = 0; i < count; ++i) {
    BipartiteGraph bg;
    bg.nl = bg.nr = m;
    bg.adj = out_adj;
    for (auto& l : bg.adj) rng.shuffle(l);
    auto match = hopcroft_karp(bg);
    if (match.size == 0) {
      fam.error = "residual host exhausted after " + std::to_string(i) + " forests";
      break;
    }
    // degree-<=1 subgraph; one edge deleted per cycle
    UnitCapGraph sub(m);
    for (int l = 0; l < m; ++l)
      if (match.match_l[l] != -1) sub.add_edge(l, match.match_l[l]);
    std::vector<char> seen(m, 0);
    for (int l = 0; l < m; ++l) {
      if (seen[l] || sub.succ(l) == -1) continue;
      // detect the cycle through l, if any
      int x = l;
      bool cyc = true;
      std::vector<int> walk;
      while (x != -1 && !seen[x]) {
        seen[x] = 1;
        walk.push_back(x);
        x = sub.succ(x);
      }
      cyc = (x == l);
      if (cyc) {
        int mn = *std::min_element(walk.begin(), walk.end());
        sub.remove_edge(mn, sub.succ(mn));
      }
    }
    LinearForest f(big);
    for (auto [a, b] : sub.edges()) f.add_edge(verts[a], verts[b]);
    // retire used edges from the residual
    for (auto [a, b] : sub.edges()) std::erase(out_adj[a], b);
    min_e = std::min(min_e, static_cast<double>(f.edge_count()));
    fam.forests.push_back(std::move(f));
  }
  double lg = std::log(std::max(3, m));
  fam.audit.add("forest_size_min", min_e, m - m / std::pow(lg, 4) / tol, false,
                false);
  fam.ok = static_cast<int>(fam.forests.size()) == count;
  return fam;
}

namespace {

struct BalanceCounts {
  std::array<long long, 3> cw{}, ccw{};
};

BalanceCounts balance_counts(const Tripartition& parts, const LinearForest& f) {
  BalanceCounts bc;
  for (auto [u, v] : f.edges()) {
    int cu = parts.class_of(u), cv = parts.class_of(v);
    if ((cu + 1) % 3 == cv)
      bc.cw[cu]++;
    else
      bc.ccw[cv]++;  // counterclockwise pair indexed by head class
  }
  return bc;
}

}  // namespace

ForestFamily balanced_covers(const Digraph& h, std::span<const int> verts,
                             const Tripartition& parts, const GBetaModel& model,
                             const BalancedCoverParams& p,
                             std::span<const std::vector<int>> forbidden,
                             const EdgeBitset& reserved,
                             const std::vector<int>* u_star) {
  ForestFamily fam;
  fam.requested = p.ell;
  int n = parts.n, big = 3 * n;
  double eps = p.epsilon;
  Rng rng(p.seed);

  std::vector<char> in_star(big, 0);
  if (u_star)
    for (int v : *u_star) in_star[v] = 1;

  // 1. raw path covers with a discard buffer
  int buffer = static_cast<int>(std::ceil(18 * std::sqrt(eps) * n)) + 2;
  int r = std::max(1, static_cast<int>(std::llround(p.gamma * n)));
  auto pc = path_cover(h, verts, r, p.ell + buffer, p.tol, rng.next_u64());
  for (auto& e : pc.audit.entries) fam.audit.entries.push_back(e);

  // 2. discard forests loaded with off-model or reserved edges
  auto bad_count = [&](const LinearForest& f) {
    long long c = 0;
    for (auto [u, v] : f.edges())
      if (!model.edge_in_model(u, v) || reserved.test(u, v)) ++c;
    return c;
  };
  std::vector<int> order(pc.forests.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return bad_count(pc.forests[a]) < bad_count(pc.forests[b]);
  });
  std::vector<LinearForest> forests;
  for (int idx : order) {
    if (static_cast<int>(forests.size()) == p.ell) break;
    forests.push_back(std::move(pc.forests[idx]));
  }
  if (static_cast<int>(forests.size()) < p.ell) {
    fam.error = "path cover shortfall: " + std::to_string(forests.size()) + " of " +
                std::to_string(p.ell);
    fam.forests = std::move(forests);
    return fam;
  }

  // 3. per-forest pruning: forbidden vertices, off-model and reserved edges
  for (int i = 0; i < p.ell; ++i) {
    auto& f = forests[i];
    std::vector<char> forb(big, 0);
    if (i < static_cast<int>(forbidden.size()))
      for (int v : forbidden[i]) forb[v] = 1;
    for (auto [u, v] : f.edges())
      if (forb[u] || forb[v] || !model.edge_in_model(u, v) || reserved.test(u, v))
        f.remove_edge(u, v);
  }

  EdgeBitset family_used(big);
  for (const auto& f : forests)
    for (auto [u, v] : f.edges()) family_used.set(u, v);

  // 4. semidegree boosting (only bites when the family is large enough for
  // the deficiency threshold to be meaningful)
  double boost_thr = std::pow(eps, 0.25) * n;
  std::vector<int> dplus(big, 0), dminus(big, 0);
  for (const auto& f : forests)
    for (auto [u, v] : f.edges()) {
      ++dplus[u];
      ++dminus[v];
    }
  std::vector<char> in_v(big, 0);
  for (int v : verts) in_v[v] = 1;
  std::vector<char> xplus(big, 0), xminus(big, 0);
  bool any_boost = false;
  double boost_gap = std::max(1.0, boost_thr);
  for (int v : verts)
    if (!in_star[v] && p.ell >= 2) {
      if (dplus[v] <= p.ell - boost_gap) {
        xplus[v] = 1;
        any_boost = true;
      }
      if (dminus[v] <= p.ell - boost_gap) {
        xminus[v] = 1;
        any_boost = true;
      }
    }
  EdgeBitset leftover(big);
  std::vector<int> dl_plus(big, 0), dl_minus(big, 0);
  bool boost_ok = true;
  if (any_boost) {
    double y_thr = std::max(1.0, std::pow(eps, 1.0 / 8.0) * n - 1);
    for (int i = 0; i < p.ell; ++i) {
      auto& f = forests[i];
      std::vector<char> forb(big, 0);
      if (i < static_cast<int>(forbidden.size()))
        for (int v : forbidden[i]) forb[v] = 1;
      std::vector<char> blocked(big, 0);
      for (int v = 0; v < big; ++v) {
        bool busy = std::max(dl_plus[v], dl_minus[v]) >= y_thr;
        if (busy || xplus[v] || xminus[v]) {
          blocked[v] = 1;
          // protect their forest edges too
          if (busy || xplus[v]) {
            int w = f.succ(v);
            if (w != -1) blocked[w] = 1;
          }
          if (busy || xminus[v]) {
            int w = f.pred(v);
            if (w != -1) blocked[w] = 1;
          }
        }
      }
      auto avail = [&](int a, int b) {
        return h.has_edge(a, b) && model.edge_in_model(a, b) &&
               !reserved.test(a, b) && !family_used.test(a, b) &&
               !leftover.test(a, b);
      };
      auto drop_to_leftover = [&](int a, int b) {
        f.remove_edge(a, b);
        family_used.reset(a, b);
        leftover.set(a, b);
        --dplus[a];
        --dminus[b];
        ++dl_plus[a];
        ++dl_minus[b];
      };
      std::vector<char> taken(big, 0);
      for (int v : verts) {
        if (!xplus[v] || forb[v] || f.out_degree(v) != 0) continue;
        int pick = -1;
        for (int w : h.out(v))
          if (in_v[w] && !forb[w] && !blocked[w] && !taken[w] && avail(v, w)) {
            pick = w;
            break;
          }
        if (pick == -1) {
          boost_ok = false;
          continue;
        }
        if (f.succ(pick) != -1) drop_to_leftover(pick, f.succ(pick));
        if (f.pred(pick) != -1) drop_to_leftover(f.pred(pick), pick);
        f.add_edge(v, pick);
        family_used.set(v, pick);
        ++dplus[v];
        ++dminus[pick];
        taken[pick] = 1;
      }
      for (int v : verts) {
        if (!xminus[v] || forb[v] || f.in_degree(v) != 0) continue;
        int pick = -1;
        for (int w : h.in(v))
          if (in_v[w] && !forb[w] && !blocked[w] && !taken[w] && avail(w, v)) {
            pick = w;
            break;
          }
        if (pick == -1) {
          boost_ok = false;
          continue;
        }
        if (f.succ(pick) != -1) drop_to_leftover(pick, f.succ(pick));
        if (f.pred(pick) != -1) drop_to_leftover(f.pred(pick), pick);
        f.add_edge(pick, v);
        family_used.set(pick, v);
        ++dplus[pick];
        ++dminus[v];
        taken[pick] = 1;
      }
    }
  }

  // 5. exact balancing: trim the two heavier pairs of each directional triple
  EdgeBitset tilde(big);
  std::vector<int> dt_plus(big, 0), dt_minus(big, 0);
  double tilde_thr = std::max(1.0, std::pow(eps, 1.0 / 16.0) * n - 1);
  for (auto& f : forests) {
    for (int dir = 0; dir < 2; ++dir) {
      auto bc = balance_counts(parts, f);
      auto& triple = dir == 0 ? bc.cw : bc.ccw;
      long long target = std::min({triple[0], triple[1], triple[2]});
      for (int j = 0; j < 3; ++j) {
        long long excess = triple[j] - target;
        if (excess == 0) continue;
        // collect candidate edges of this pair, those avoiding the busy set first
        std::vector<Edge> cand;
        for (auto [u, v] : f.edges()) {
          int cu = parts.class_of(u), cv = parts.class_of(v);
          bool is_cw = (cu + 1) % 3 == cv;
          int pair_idx = is_cw ? cu : cv;
          if ((dir == 0) == is_cw && pair_idx == j) cand.emplace_back(u, v);
        }
        std::stable_sort(cand.begin(), cand.end(), [&](Edge a, Edge b) {
          auto busy = [&](Edge e) {
            return std::max({dt_plus[e.first], dt_minus[e.first],
                             dt_plus[e.second], dt_minus[e.second]}) >= tilde_thr;
          };
          return busy(a) < busy(b);
        });
        for (long long t = 0; t < excess; ++t) {
          auto [u, v] = cand[static_cast<size_t>(t)];
          f.remove_edge(u, v);
          family_used.reset(u, v);
          tilde.set(u, v);
          --dplus[u];
          --dminus[v];
          ++dt_plus[u];
          ++dt_minus[v];
        }
      }
    }
  }

  // 6. final audits
  bool balanced = true, contained = true, avoids = true;
  double min_e = 1e18;
  for (int i = 0; i < p.ell; ++i) {
    const auto& f = forests[i];
    auto bc = balance_counts(parts, f);
    if (!(bc.cw[0] == bc.cw[1] && bc.cw[1] == bc.cw[2] && bc.ccw[0] == bc.ccw[1] &&
          bc.ccw[1] == bc.ccw[2]))
      balanced = false;
    std::vector<char> forb(big, 0);
    if (i < static_cast<int>(forbidden.size()))
      for (int v : forbidden[i]) forb[v] = 1;
    for (auto [u, v] : f.edges()) {
      if (!h.has_edge(u, v) || !model.edge_in_model(u, v) || reserved.test(u, v))
        contained = false;
      if (forb[u] || forb[v]) avoids = false;
    }
    min_e = std::min(min_e, static_cast<double>(f.edge_count()));
  }
  double f4_min = 1e18;
  {
    std::vector<int> du(big, 0), dv(big, 0);
    for (const auto& f : forests)
      for (auto [a, b] : f.edges()) {
        ++du[a];
        ++dv[b];
      }
    for (int v : verts)
      if (!in_star[v]) f4_min = std::min({f4_min, static_cast<double>(du[v]),
                                          static_cast<double>(dv[v])});
  }
  fam.audit.add("bidirectional_balance_exact", balanced ? 1 : 0, 1, true, false);
  fam.audit.add("containment", contained ? 1 : 0, 1, true, false);
  fam.audit.add("forbidden_avoidance", avoids ? 1 : 0, 1, true, false);
  fam.audit.add("boost_feasible", boost_ok ? 1 : 0, 1, false, false);
  fam.audit.add("forest_size_min", min_e,
                static_cast<double>(verts.size()) - 5 * std::pow(eps, 0.125) * n * p.tol,
                false, false);
  fam.audit.add("union_semidegree_min", f4_min,
                p.ell - 2 * std::pow(eps, 1.0 / 16.0) * n * p.tol, false, false);
  fam.forests = std::move(forests);
  fam.ok = fam.audit.hard_ok() && static_cast<int>(fam.forests.size()) == p.ell;
  return fam;
}

EndpointProfile endpoint_profile(const TripartiteTournament& g,
                                 const LinearForest& f, const GBetaModel* model) {
  EndpointProfile ep;
  int n = g.n();
  for (auto [u, v] : f.edges())
    if (!g.graph().has_edge(u, v))
      throw InvariantError("edge_subset", "forest edge not in tournament");
  for (int v = 0; v < 3 * n; ++v) {
    int c = g.parts().class_of(v);
    if (f.out_degree(v) == 0) ep.plus[c]++;
    if (f.in_degree(v) == 0) ep.minus[c]++;
  }
  ep.six_equal = ep.plus[0] == ep.plus[1] && ep.plus[1] == ep.plus[2] &&
                 ep.minus[0] == ep.minus[1] && ep.minus[1] == ep.minus[2] &&
                 ep.plus[0] == ep.minus[0];
  if (model) {
    for (int pth = 0; pth < n; ++pth) {
      int v = model->roles[0] * n + pth;
      bool back = model->backward[pth];
      if (f.out_degree(v) == 0) (back ? ep.bwd_plus : ep.fwd_plus)++;
      if (f.in_degree(v) == 0) (back ? ep.bwd_minus : ep.fwd_minus)++;
    }
    ep.v1_split_equal = ep.fwd_plus == ep.fwd_minus && ep.bwd_plus == ep.bwd_minus;
  }
  return ep;
}

}  // namespace tripack
