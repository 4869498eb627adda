#include "tripack/structure.hpp"

#include "tripack/mincostflow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace tripack {

int EditScript::modifications() const {
  // pair up each removal (u,v) with an addition (v,u); a pair is one edit
  std::set<Edge> adds(additions.begin(), additions.end());
  int paired = 0;
  for (auto [u, v] : removals)
    if (adds.count({v, u})) ++paired;
  return entry_count() - paired;
}

int UndirectedBipartite::deg_a(int a) const {
  int d = 0;
  for (int b = 0; b < m; ++b) d += adj.test(a, b);
  return d;
}

int UndirectedBipartite::deg_b(int b) const {
  int d = 0;
  for (int a = 0; a < m; ++a) d += adj.test(a, b);
  return d;
}

EditScript regularize_bipartite(const UndirectedBipartite& h, int d) {
  int m = h.m;
  if (d < 0 || d > m) throw InvariantError("degree_feasible", "need 0 <= d <= m");
  UndirectedBipartite w = h;
  std::vector<int> da(m), db(m);
  long long edges = 0;
  for (int a = 0; a < m; ++a) {
    da[a] = w.deg_a(a);
    edges += da[a];
  }
  for (int b = 0; b < m; ++b) db[b] = w.deg_b(b);

  // phase 1: pad or trim to exactly d*m edges, preferring endpoints whose
  // degree is on the deficient side
  long long target = static_cast<long long>(d) * m;
  while (edges < target) {
    int best_a = -1, best_b = -1, best_score = -1;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (w.adj.test(a, b)) continue;
        int score = (da[a] < d ? 1 : 0) + (db[b] < d ? 1 : 0);
        if (score > best_score) {
          best_score = score;
          best_a = a;
          best_b = b;
        }
      }
    w.adj.set(best_a, best_b);
    ++da[best_a];
    ++db[best_b];
    ++edges;
  }
  while (edges > target) {
    int best_a = -1, best_b = -1, best_score = -1;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (!w.adj.test(a, b)) continue;
        int score = (da[a] > d ? 1 : 0) + (db[b] > d ? 1 : 0);
        if (score > best_score) {
          best_score = score;
          best_a = a;
          best_b = b;
        }
      }
    w.adj.reset(best_a, best_b);
    --da[best_a];
    --db[best_b];
    --edges;
  }

  // phase 2: rebalancing swaps; each strictly reduces the total deviation
  auto swap_side_a = [&]() {
    int lo = -1, hi = -1;
    for (int a = 0; a < m; ++a) {
      if (da[a] < d && lo == -1) lo = a;
      if (da[a] > d && hi == -1) hi = a;
    }
    if (lo == -1 || hi == -1) return false;
    for (int x = 0; x < m; ++x)
      if (w.adj.test(hi, x) && !w.adj.test(lo, x)) {
        w.adj.reset(hi, x);
        w.adj.set(lo, x);
        --da[hi];
        ++da[lo];
        return true;
      }
    throw InvariantError("rebalance", "no transferable edge found");
  };
  auto swap_side_b = [&]() {
    int lo = -1, hi = -1;
    for (int b = 0; b < m; ++b) {
      if (db[b] < d && lo == -1) lo = b;
      if (db[b] > d && hi == -1) hi = b;
    }
    if (lo == -1 || hi == -1) return false;
    for (int x = 0; x < m; ++x)
      if (w.adj.test(x, hi) && !w.adj.test(x, lo)) {
        w.adj.reset(x, hi);
        w.adj.set(x, lo);
        --db[hi];
        ++db[lo];
        return true;
      }
    throw InvariantError("rebalance", "no transferable edge found");
  };
  while (swap_side_a() || swap_side_b()) {
  }

  for (int a = 0; a < m; ++a)
    if (da[a] != d || db[a] != d)
      throw InvariantError("regular_output", "regularization did not converge");

  EditScript script;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      bool before = h.adj.test(a, b), after = w.adj.test(a, b);
      if (!before && after) script.additions.emplace_back(a, b);
      if (before && !after) script.removals.emplace_back(a, b);
    }
  return script;
}

namespace {

// exact max-agreement d-regular bipartite subgraph of the V3->V2 pair census
// via min-cost flow: selecting a pair where the tournament already points
// V3 -> V2 costs 0, selecting a reversed pair costs 1
BitMatrix best_ccw_graph(int n, int d, const std::vector<std::vector<char>>& ccw_in_t) {
  BitMatrix chosen(n);
  if (d == 0) return chosen;
  MinCostFlow f(2 * n + 2);
  int s = 2 * n, t = 2 * n + 1;
  std::vector<std::vector<int>> arc(n, std::vector<int>(n));
  for (int w = 0; w < n; ++w) f.add_arc(s, w, d, 0);
  for (int u = 0; u < n; ++u) f.add_arc(n + u, t, d, 0);
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      arc[w][u] = f.add_arc(w, n + u, 1, ccw_in_t[w][u] ? 0 : 1);
  auto [flow, cost] = f.run(s, t, static_cast<long long>(d) * n);
  if (flow != static_cast<long long>(d) * n)
    throw InvariantError("flow_feasible", "regular subgraph selection infeasible");
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      if (f.flow_on(arc[w][u]) > 0) chosen.set(w, u);
  return chosen;
}

struct Candidate {
  GBetaModel model;
  long long distance = 0;
};

Candidate evaluate_split(const TripartiteTournament& t, std::array<int, 3> roles,
                         std::vector<uint8_t> backward) {
  int n = t.n();
  const auto& g = t.graph();
  int c2 = roles[1], c3 = roles[2];
  GBetaModel model;
  model.n = n;
  model.roles = roles;
  model.backward = std::move(backward);
  model.beta_n = 0;
  for (int p = 0; p < n; ++p) model.beta_n += model.backward[p] ? 1 : 0;
  if (2 * model.beta_n > n) return {model, -1};  // mirrored assignment covers this

  std::vector<std::vector<char>> ccw_in_t(n, std::vector<char>(n, 0));
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      ccw_in_t[w][u] = g.has_edge(c3 * n + w, c2 * n + u) ? 1 : 0;
  model.ccw = best_ccw_graph(n, model.beta_n, ccw_in_t);
  model.validate();

  long long mismatch = 0;
  for (auto [u, v] : g.edges())
    if (!model.edge_in_model(u, v)) ++mismatch;
  return {model, 2 * mismatch};
}

Candidate evaluate_roles(const TripartiteTournament& t, std::array<int, 3> roles) {
  int n = t.n();
  const auto& g = t.graph();
  int c1 = roles[0], c2 = roles[1], c3 = roles[2];

  // small classes: every split is affordable, which also keeps this in exact
  // agreement with the exhaustive referee
  if (n <= 8) {
    Candidate best;
    best.distance = -1;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<uint8_t> back(n, 0);
      for (int p = 0; p < n; ++p) back[p] = mask >> p & 1;
      auto cand = evaluate_split(t, roles, std::move(back));
      if (cand.distance < 0) continue;
      if (best.distance < 0 || cand.distance < best.distance) best = std::move(cand);
    }
    return best;
  }

  // majority split of the role-V1 class; ties go forward
  std::vector<uint8_t> back(n, 0);
  for (int p = 0; p < n; ++p) {
    int v = c1 * n + p;
    int fwd = 0;
    for (int q = 0; q < n; ++q) {
      if (g.has_edge(v, c2 * n + q)) ++fwd;  // ->V1 -> V2
      if (g.has_edge(c3 * n + q, v)) ++fwd;  // V3 -> ->V1
    }
    if (fwd < n) back[p] = 1;
  }
  return evaluate_split(t, roles, std::move(back));
}

}  // namespace

ClosenessReport nearest_gbeta(const TripartiteTournament& t) {
  static constexpr std::array<std::array<int, 3>, 6> kRoles{{{0, 1, 2},
                                                             {1, 2, 0},
                                                             {2, 0, 1},
                                                             {0, 2, 1},
                                                             {2, 1, 0},
                                                             {1, 0, 2}}};
  ClosenessReport best;
  bool have = false;
  for (const auto& roles : kRoles) {
    auto cand = evaluate_roles(t, roles);
    if (cand.distance < 0) continue;
    if (!have || cand.distance < best.distance) {
      best.model = std::move(cand.model);
      best.distance = cand.distance;
      have = true;
    }
  }
  if (!have) throw InvariantError("nearest_gbeta", "no admissible role assignment");
  double n3 = 3.0 * t.n();
  best.epsilon = static_cast<double>(best.distance) / (n3 * n3);
  return best;
}

GBetaEditResult to_gbeta_member(const TripartiteTournament& t,
                                const Partition4Roles& p) {
  int n = t.n();
  const auto& g = t.graph();
  int total = p.parts.total();
  if (total != 3 * n)
    throw InvariantError("partition_cover", "partition does not cover V");
  {
    std::vector<char> seen(3 * n, 0);
    for (const auto* blk : {&p.parts.v11, &p.parts.v12, &p.parts.v21, &p.parts.v22})
      for (int v : *blk) {
        if (v < 0 || v >= 3 * n || seen[v])
          throw InvariantError("partition_disjoint", "blocks overlap or out of range");
        seen[v] = 1;
      }
  }

  GBetaEditResult res;

  // membership map: 0=v11, 1=v12, 2=v21, 3=v22
  std::vector<int> blk(3 * n, -1);
  for (int v : p.parts.v11) blk[v] = 0;
  for (int v : p.parts.v12) blk[v] = 1;
  for (int v : p.parts.v21) blk[v] = 2;
  for (int v : p.parts.v22) blk[v] = 3;

  // measured eps1: bad-direction mass of the supplied partition
  {
    long long bad = 0;
    for (auto [u, v] : g.edges()) {
      bool u1 = blk[u] <= 1, v2 = blk[v] == 1 || blk[v] == 3;
      bool u2 = blk[u] >= 2, v1 = blk[v] == 0 || blk[v] == 2;
      if ((u1 && v2) || (u2 && v1)) ++bad;
    }
    res.eps1 = static_cast<double>(bad) / (static_cast<double>(n) * n);
  }

  // measured eps2: class-mismatch mass (largest of the three)
  auto cls = [&](int v) { return t.parts().class_of(v); };
  {
    long long da = 0, db = 0, dc = 0;
    for (int v = 0; v < 3 * n; ++v) {
      bool in_a = cls(v) == p.class_a, in_b = cls(v) == p.class_b,
           in_c = cls(v) == p.class_c;
      bool part_a = blk[v] == 0 || blk[v] == 3;
      bool part_b = blk[v] == 1;
      bool part_c = blk[v] == 2;
      if (in_a != part_a) ++da;
      if (in_b != part_b) ++db;
      if (in_c != part_c) ++dc;
    }
    res.eps2 = static_cast<double>(std::max({da, db, dc})) / n;
  }

  // step 1: relocate mismatched vertices so the blocks align with classes;
  // class-a vertices land in v11 or v22 by majority against the two others
  std::vector<int> nb(3 * n, -1);  // 0 = <-V1, 3 = ->V1, 1 = V2, 2 = V3
  for (int v = 0; v < 3 * n; ++v) {
    if (cls(v) == p.class_b)
      nb[v] = 1;
    else if (cls(v) == p.class_c)
      nb[v] = 2;
    else if (blk[v] == 0 || blk[v] == 3)
      nb[v] = blk[v];
    else {
      int fwd = 0;  // agreement with ->V1: out into B, in from C
      for (int q = 0; q < n; ++q) {
        if (g.has_edge(v, p.class_b * n + q)) ++fwd;
        if (g.has_edge(p.class_c * n + q, v)) ++fwd;
      }
      nb[v] = fwd >= n ? 3 : 0;
    }
  }
  // normalise |<-V1| <= |->V1|
  {
    int back = 0, fwd = 0;
    for (int v = 0; v < 3 * n; ++v) {
      if (nb[v] == 0) ++back;
      if (nb[v] == 3) ++fwd;
    }
    if (back > fwd) {
      // mirror: swap the split and the chirality of (V2, V3)
      for (int v = 0; v < 3 * n; ++v) {
        if (nb[v] == 0)
          nb[v] = 3;
        else if (nb[v] == 3)
          nb[v] = 0;
        else if (nb[v] == 1)
          nb[v] = 2;
        else
          nb[v] = 1;
      }
    }
  }

  int class_v2 = -1, class_v3 = -1;
  for (int v = 0; v < 3 * n; ++v) {
    if (nb[v] == 1) class_v2 = cls(v);
    if (nb[v] == 2) class_v3 = cls(v);
  }
  int class_v1 = 3 - class_v2 - class_v3;

  GBetaModel model;
  model.n = n;
  model.roles = {class_v1, class_v2, class_v3};
  model.backward.assign(n, 0);
  int beta_n = 0;
  for (int pth = 0; pth < n; ++pth) {
    int v = class_v1 * n + pth;
    if (nb[v] == 0) {
      model.backward[pth] = 1;
      ++beta_n;
    }
  }
  model.beta_n = beta_n;

  // step 2: the V3->V2 bipartite graph currently induced by the tournament
  UndirectedBipartite ccw_now(n);
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      if (g.has_edge(class_v3 * n + w, class_v2 * n + u)) ccw_now.adj.set(w, u);
  EditScript bip = regularize_bipartite(ccw_now, beta_n);
  model.ccw = ccw_now.adj;
  for (auto [w, u] : bip.additions) model.ccw.set(w, u);
  for (auto [w, u] : bip.removals) model.ccw.reset(w, u);
  model.validate();
  res.model = model;

  // script = exact symmetric difference between T and the realized member
  for (int u = 0; u < 3 * n; ++u)
    for (int v = 0; v < 3 * n; ++v) {
      if (u == v || t.parts().same_class(u, v)) continue;
      bool in_t = g.has_edge(u, v), in_m = model.edge_in_model(u, v);
      if (in_t && !in_m) res.script.removals.emplace_back(u, v);
      if (!in_t && in_m) res.script.additions.emplace_back(u, v);
    }

  res.bound = (10.0 * res.eps1 + 90.0 * res.eps2) * static_cast<double>(n) * n;
  res.within_bound = res.script.modifications() <= res.bound + 1e-9;
  return res;
}

ExceptionalSet exceptional_vertices(const TripartiteTournament& g,
                                    const GBetaModel& model, double gamma) {
  int n = g.n();
  if (model.n != n)
    throw InvariantError("same_partition", "model size differs");
  ExceptionalSet out;
  out.gamma = gamma;
  std::vector<int> offdeg(3 * n, 0);
  long long off_edges = 0;
  for (auto [u, v] : g.graph().edges())
    if (!model.edge_in_model(u, v)) {
      ++offdeg[u];
      ++offdeg[v];
      ++off_edges;
    }
  double thr = gamma * 3 * n;
  for (int v = 0; v < 3 * n; ++v)
    if (offdeg[v] >= thr - 1e-9) out.vertices.push_back(v);
  out.offmodel_edges = off_edges;
  out.mass_bound_ok =
      static_cast<double>(out.vertices.size()) * gamma * 3 * n / 2.0 <=
      static_cast<double>(off_edges) + 1e-9;
  return out;
}

}  // namespace tripack
