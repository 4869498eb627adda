#include "tripack/hamiltonicity.hpp"

#include "tripack/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tripack {

bool verify_hamilton_cycle(const Digraph& g, const std::vector<int>& cycle,
                           std::string* why) {
  int m = g.vertex_count();
  if (static_cast<int>(cycle.size()) != m) {
    if (why) *why = "length != vertex count";
    return false;
  }
  std::vector<char> seen(m, 0);
  for (int v : cycle) {
    if (v < 0 || v >= m || seen[v]) {
      if (why) *why = "vertex repeated or out of range";
      return false;
    }
    seen[v] = 1;
  }
  for (size_t i = 0; i < cycle.size(); ++i) {
    int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
    if (!g.has_edge(u, v)) {
      if (why)
        *why = "missing edge " + std::to_string(u) + "->" + std::to_string(v);
      return false;
    }
  }
  return true;
}

namespace {

// exhaustive subset DP; m <= 14
std::optional<std::vector<int>> held_karp_cycle(const Digraph& g) {
  int m = g.vertex_count();
  if (m < 2) return std::nullopt;
  int full = (1 << m) - 1;
  std::vector<uint16_t> dp(static_cast<size_t>(1) << m, 0);
  dp[1] = 1;  // path {0} ending at 0
  for (int mask = 1; mask <= full; ++mask) {
    uint16_t ends = dp[mask];
    if (!ends || !(mask & 1)) continue;
    for (int v = 0; v < m; ++v) {
      if (!(ends >> v & 1)) continue;
      for (int w : g.out(v)) {
        if (mask >> w & 1) continue;
        dp[mask | (1 << w)] |= static_cast<uint16_t>(1 << w);
      }
    }
  }
  int last = -1;
  for (int v = 1; v < m; ++v)
    if ((dp[full] >> v & 1) && g.has_edge(v, 0)) {
      last = v;
      break;
    }
  if (m == 2) {
    if (g.has_edge(0, 1) && g.has_edge(1, 0)) return std::vector<int>{0, 1};
    return std::nullopt;
  }
  if (last == -1) return std::nullopt;
  // reconstruct backwards
  std::vector<int> cycle(m);
  int mask = full, cur = last;
  for (int pos = m - 1; pos >= 1; --pos) {
    cycle[pos] = cur;
    int prev_mask = mask ^ (1 << cur);
    int prev = -1;
    for (int u : g.in(cur))
      if ((prev_mask >> u & 1) && (dp[prev_mask] >> u & 1)) {
        prev = u;
        break;
      }
    mask = prev_mask;
    cur = prev;
  }
  cycle[0] = 0;
  return cycle;
}

// budgeted backtracking with a fewest-onward-choices successor order
std::optional<std::vector<int>> backtrack_cycle(const Digraph& g,
                                                long long budget, uint64_t seed,
                                                long long& spent) {
  int m = g.vertex_count();
  Rng rng(seed);
  while (spent < budget) {
    long long slice = std::max<long long>(1000, budget / 16);
    int start = rng.uniform_int(0, m - 1);
    std::vector<char> used(m, 0);
    std::vector<int> path{start};
    used[start] = 1;
    // per-depth candidate stacks
    std::vector<std::vector<int>> cand(m + 1);
    auto push_candidates = [&](int u) {
      auto& c = cand[path.size()];
      c.clear();
      for (int w : g.out(u))
        if (!used[w]) c.push_back(w);
      // fewest unvisited onward moves first (we pop from the back)
      std::vector<int> keyed(c.size());
      for (size_t i = 0; i < c.size(); ++i) {
        int w = c[i], k = 0;
        for (int x : g.out(w)) k += !used[x];
        keyed[i] = k * 1024 + rng.uniform_int(0, 1023);
      }
      std::vector<int> idx(c.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(),
                [&](int a, int b) { return keyed[a] > keyed[b]; });
      std::vector<int> sorted(c.size());
      for (size_t i = 0; i < c.size(); ++i) sorted[i] = c[idx[i]];
      c = std::move(sorted);
    };
    push_candidates(start);
    long long local = 0;
    while (!path.empty() && local < slice) {
      if (static_cast<int>(path.size()) == m) {
        if (g.has_edge(path.back(), start)) {
          spent += local;
          return path;
        }
        // dead end at full depth: step back
        used[path.back()] = 0;
        path.pop_back();
        continue;
      }
      auto& c = cand[path.size()];
      if (c.empty()) {
        used[path.back()] = 0;
        path.pop_back();
        continue;
      }
      int w = c.back();
      c.pop_back();
      if (used[w]) continue;
      ++local;
      used[w] = 1;
      path.push_back(w);
      push_candidates(w);
    }
    spent += local;
  }
  return std::nullopt;
}

}  // namespace

HamResult ghouila_houri_hamilton(const Digraph& g, const HamOptions& opt) {
  HamResult res;
  int m = g.vertex_count();
  bool audit = g.min_semidegree() >= (m + 1) / 2;
  if (!audit && !opt.override_precondition) {
    res.status = HamStatus::PreconditionViolated;
    return res;
  }
  if (m < 2 || !g.is_strongly_connected()) {
    res.status = HamStatus::NotHamiltonian;
    res.exhaustive = true;
    return res;
  }
  if (m <= opt.exact_threshold) {
    auto cycle = held_karp_cycle(g);
    res.exhaustive = true;
    if (cycle) {
      if (!verify_hamilton_cycle(g, *cycle))
        throw InvariantError("hamilton_verify", "exact search produced an invalid cycle");
      res.status = HamStatus::Found;
      res.cycle = std::move(*cycle);
    } else {
      res.status = HamStatus::NotHamiltonian;
    }
    return res;
  }
  long long spent = 0;
  auto cycle = backtrack_cycle(g, opt.budget, opt.seed, spent);
  res.expansions = spent;
  if (cycle) {
    if (!verify_hamilton_cycle(g, *cycle))
      throw InvariantError("hamilton_verify", "search produced an invalid cycle");
    res.status = HamStatus::Found;
    res.cycle = std::move(*cycle);
  } else {
    res.status = HamStatus::BudgetExhausted;
  }
  return res;
}

PerfectMatchingResult bipartite_perfect_matching(const BipartiteGraph& g) {
  PerfectMatchingResult r;
  r.matching = hopcroft_karp(g);
  r.perfect = g.nl == g.nr && r.matching.size == g.nl;
  int mindeg = g.nl == 0 ? 0 : g.nr;
  std::vector<int> rdeg(g.nr, 0);
  for (const auto& l : g.adj)
    for (int v : l) ++rdeg[v];
  for (const auto& l : g.adj) mindeg = std::min(mindeg, static_cast<int>(l.size()));
  for (int v = 0; v < g.nr; ++v) mindeg = std::min(mindeg, rdeg[v]);
  r.hall_audit = g.nl == g.nr && 2 * mindeg >= g.nl;
  if (r.hall_audit && !r.perfect)
    throw InvariantError("hall_guarantee",
                         "min degree >= n/2 but matching is not perfect");
  if (!r.perfect) r.violator = hall_violator(g, r.matching);
  return r;
}

namespace {

// local-id lens over a vertex subset
struct LocalIndex {
  std::vector<int> to_global;
  std::vector<int> to_local;  // -1 when absent

  LocalIndex(int n, const std::vector<int>& verts)
      : to_global(verts), to_local(n, -1) {
    for (size_t i = 0; i < verts.size(); ++i) to_local[verts[i]] = static_cast<int>(i);
  }
  int size() const { return static_cast<int>(to_global.size()); }
};

struct EdgeSetBuilder {
  std::vector<Edge> edges;
  BitMatrix seen;
  explicit EdgeSetBuilder(int n) : seen(n) {}
  void add(int u, int v) {
    if (u == v) return;  // contraction loop, dropped
    if (seen.test(u, v)) return;
    seen.set(u, v);
    edges.emplace_back(u, v);
  }
};

}  // namespace

CloseResult close_gbeta(const Digraph& g, const std::vector<int>& part4,
                        const std::vector<Edge>& m_edges, double eps,
                        const HamOptions& ham) {
  CloseResult out;
  int n = g.vertex_count();
  std::vector<int> fwd, bwd, v2, v3;
  for (int v = 0; v < n; ++v) switch (part4[v]) {
      case 0: fwd.push_back(v); break;
      case 1: bwd.push_back(v); break;
      case 2: v2.push_back(v); break;
      case 3: v3.push_back(v); break;
      default: throw InvariantError("part_labels", "labels must be 0..3");
    }
  int nq = static_cast<int>(v2.size());
  if (static_cast<int>(v3.size()) != nq || nq == 0) {
    out.fail_stage = "shape";
    out.audits_ok = false;
    out.audit_failures.push_back("|V2| != |V3| or empty");
    return out;
  }
  std::vector<char> is_fwd(n, 0), is_bwd(n, 0), is_v2(n, 0), is_v3(n, 0);
  for (int v : fwd) is_fwd[v] = 1;
  for (int v : bwd) is_bwd[v] = 1;
  for (int v : v2) is_v2[v] = 1;
  for (int v : v3) is_v3[v] = 1;

  // matching sanity: endpoints pairwise distinct
  {
    std::vector<char> used(n, 0);
    for (auto [w, u] : m_edges) {
      if (used[w] || used[u]) {
        out.fail_stage = "matching_shape";
        return out;
      }
      used[w] = used[u] = 1;
    }
  }

  // degree audits at level eps
  double need = (1 - eps) * nq;
  auto deg_in_set = [&](int v, const std::vector<char>& set, bool outward) {
    int d = 0;
    if (outward)
      for (int w : g.out(v)) d += set[w];
    else
      for (int w : g.in(v)) d += set[w];
    return d;
  };
  std::vector<char> bwd_or_v3(n, 0), fwd_or_v3(n, 0), fwd_or_v2(n, 0), bwd_or_v2(n, 0);
  for (int v = 0; v < n; ++v) {
    bwd_or_v3[v] = is_bwd[v] || is_v3[v];
    fwd_or_v3[v] = is_fwd[v] || is_v3[v];
    fwd_or_v2[v] = is_fwd[v] || is_v2[v];
    bwd_or_v2[v] = is_bwd[v] || is_v2[v];
  }
  auto audit_fail = [&](const std::string& s) {
    out.audits_ok = false;
    out.audit_failures.push_back(s);
  };
  for (int v : fwd)
    if (deg_in_set(v, is_v2, true) < need || deg_in_set(v, is_v3, false) < need) {
      audit_fail("forward-V1 degree");
      break;
    }
  for (int v : bwd)
    if (deg_in_set(v, is_v3, true) < need || deg_in_set(v, is_v2, false) < need) {
      audit_fail("backward-V1 degree");
      break;
    }
  for (int v : v2)
    if (deg_in_set(v, bwd_or_v3, true) < need || deg_in_set(v, fwd_or_v3, false) < need) {
      audit_fail("V2 degree");
      break;
    }
  for (int v : v3)
    if (deg_in_set(v, fwd_or_v2, true) < need || deg_in_set(v, bwd_or_v2, false) < need) {
      audit_fail("V3 degree");
      break;
    }
  if (static_cast<double>(fwd.size()) > (1 - 8 * eps) * nq ||
      static_cast<double>(bwd.size()) > (1 - 8 * eps) * nq)
    audit_fail("V1 part size");
  if (static_cast<double>(m_edges.size()) > eps * nq) audit_fail("matching size");

  for (auto [w, u] : m_edges)
    if (!is_v3[w] || !is_v2[u]) {
      out.fail_stage = "matching_shape";
      return out;
    }
  if (static_cast<int>(m_edges.size()) >= nq) {
    out.fail_stage = "matching_shape";
    return out;
  }

  // --- stage 1: clockwise side ---------------------------------------
  // lm: bijection V2 -> V3 (virtual matching) chosen so that the composed
  // map w -> lm(M(w)) is acyclic: chain the M-tails, exit outside them.
  std::vector<int> lm(n, -1), lm_inv(n, -1);
  {
    std::vector<char> v3_taken(n, 0), v2_done(n, 0);
    int p = static_cast<int>(m_edges.size());
    for (int i = 0; i < p; ++i) {
      auto [w_i, u_i] = m_edges[i];
      if (i + 1 < p) {
        int w_next = m_edges[i + 1].first;
        lm[u_i] = w_next;
        v3_taken[w_next] = 1;
        v2_done[u_i] = 1;
      }
    }
    if (p > 0) {
      // exit vertex: any V3 vertex that is not an M-tail
      std::vector<char> is_tail(n, 0);
      for (auto [w, u] : m_edges) is_tail[w] = 1;
      int exit = -1;
      for (int w : v3)
        if (!is_tail[w] && !v3_taken[w]) {
          exit = w;
          break;
        }
      if (exit == -1) {
        out.fail_stage = "aux_matching";
        return out;
      }
      lm[m_edges[p - 1].second] = exit;
      v3_taken[exit] = 1;
      v2_done[m_edges[p - 1].second] = 1;
    }
    size_t k = 0;
    for (int u : v2) {
      if (v2_done[u]) continue;
      while (k < v3.size() && v3_taken[v3[k]]) ++k;
      lm[u] = v3[k];
      v3_taken[v3[k]] = 1;
      ++k;
    }
    for (int u : v2) lm_inv[lm[u]] = u;
  }

  // contracted digraph G1 on forward-V1 u V3
  std::vector<int> g1_verts = fwd;
  g1_verts.insert(g1_verts.end(), v3.begin(), v3.end());
  std::sort(g1_verts.begin(), g1_verts.end());
  LocalIndex ix1(n, g1_verts);
  EdgeSetBuilder b1(ix1.size());
  auto add_arrow_edge = [&](int a, int b) {
    // edge of the clockwise working graph; contract heads in V2
    int head = is_v2[b] ? lm[b] : b;
    int la = ix1.to_local[a], lb = ix1.to_local[head];
    if (la != -1 && lb != -1) b1.add(la, lb);
  };
  for (int w : v3)
    for (int x : g.out(w))
      if (is_fwd[x] || is_v2[x]) add_arrow_edge(w, x);
  for (int f : fwd)
    for (int x : g.out(f))
      if (is_v2[x]) add_arrow_edge(f, x);
  for (auto [w, u] : m_edges) add_arrow_edge(w, u);  // prescribed pairs

  // M1: image of M inside V3 (a linear forest by choice of lm)
  std::vector<int> m1_succ(n, -1), m1_pred(n, -1);
  for (auto [w, u] : m_edges) {
    int h = lm[u];
    if (m1_succ[w] != -1 || m1_pred[h] != -1) {
      out.fail_stage = "aux_matching";
      return out;
    }
    m1_succ[w] = h;
    m1_pred[h] = w;
  }

  // contract M1 paths: drop all path vertices except the final one, which
  // inherits the start's in-edges
  std::vector<int> rep_start(n, -1);  // path end -> path start
  std::vector<char> on_path(n, 0), drop(n, 0);
  for (auto [w, u] : m_edges) {
    on_path[w] = 1;
    on_path[lm[u]] = 1;
  }
  for (int v : v3) {
    if (!on_path[v] || m1_succ[v] != -1) continue;  // ends only
    int s = v;
    while (m1_pred[s] != -1) s = m1_pred[s];
    rep_start[v] = s;
    for (int x = s; x != v; x = m1_succ[x]) drop[x] = 1;
  }

  std::vector<int> g1p_verts;
  for (int v : g1_verts)
    if (!drop[v]) g1p_verts.push_back(v);
  LocalIndex ix1p(n, g1p_verts);
  EdgeSetBuilder b1p(ix1p.size());
  for (auto [la, lb] : b1.edges) {
    int a = ix1.to_global[la], b = ix1.to_global[lb];
    if (drop[a]) continue;
    if (on_path[b] && m1_succ[b] == -1 && rep_start[b] != -1) {
      // head is a path end: only the start's in-edges survive
      continue;
    }
    if (drop[b]) continue;
    b1p.add(ix1p.to_local[a], ix1p.to_local[b]);
  }
  // inherited in-edges at path ends
  for (int e = 0; e < n; ++e) {
    if (rep_start[e] == -1) continue;
    int s = rep_start[e];
    for (auto [la, lb] : b1.edges) {
      if (ix1.to_global[lb] != s) continue;
      int a = ix1.to_global[la];
      if (drop[a] || on_path[a]) continue;  // exclude other path vertices
      if (a == e) continue;
      b1p.add(ix1p.to_local[a], ix1p.to_local[e]);
    }
  }

  Digraph g1p(ix1p.size(), GraphMode::General, b1p.edges);
  HamOptions inner = ham;
  inner.override_precondition = true;
  auto h1 = ghouila_houri_hamilton(g1p, inner);
  if (h1.status != HamStatus::Found) {
    out.fail_stage = "hamilton_stage1";
    return out;
  }

  // de-contract to a cycle in G1 (reinsert M1 paths)...
  std::vector<int> c1;
  for (int lv : h1.cycle) {
    int v = ix1p.to_global[lv];
    if (rep_start[v] != -1) {
      for (int x = rep_start[v]; x != v; x = m1_succ[x]) c1.push_back(x);
    }
    c1.push_back(v);
  }

  // ...then to the spanning path forest of the clockwise side
  std::vector<int> fsucc(n, -1);
  for (size_t i = 0; i < c1.size(); ++i) {
    int a = c1[i], b = c1[(i + 1) % c1.size()];
    if (is_v3[b]) {
      fsucc[a] = lm_inv[b];  // undo the V2 contraction; b's in-edge moves to V2
    } else {
      fsucc[a] = b;
    }
  }
  // forest paths: start w in V3, end at first V2 vertex reached
  std::vector<Edge> arrow_m;  // path start -> path end pairing
  for (int w : v3) {
    int x = w;
    while (fsucc[x] != -1 && !is_v2[fsucc[x]]) x = fsucc[x];
    if (fsucc[x] == -1 || !is_v2[fsucc[x]]) {
      out.fail_stage = "forest_shape";
      return out;
    }
    arrow_m.emplace_back(w, fsucc[x]);
  }

  // --- stage 2: counterclockwise side ---------------------------------
  std::vector<int> rm(n, -1), rm_inv(n, -1);
  for (auto [w, z] : arrow_m) {
    rm[w] = z;
    rm_inv[z] = w;
  }
  std::vector<int> g2_verts = bwd;
  g2_verts.insert(g2_verts.end(), v2.begin(), v2.end());
  std::sort(g2_verts.begin(), g2_verts.end());
  LocalIndex ix2(n, g2_verts);
  EdgeSetBuilder b2(ix2.size());
  auto add_back_edge = [&](int a, int b) {
    int head = is_v3[b] ? rm[b] : b;
    int la = ix2.to_local[a], lb = ix2.to_local[head];
    if (la != -1 && lb != -1) b2.add(la, lb);
  };
  for (int u : v2)
    for (int x : g.out(u))
      if (is_bwd[x] || is_v3[x]) add_back_edge(u, x);
  for (int y : bwd)
    for (int x : g.out(y))
      if (is_v3[x]) add_back_edge(y, x);

  Digraph g2(ix2.size(), GraphMode::General, b2.edges);
  auto h2 = ghouila_houri_hamilton(g2, inner);
  if (h2.status != HamStatus::Found) {
    out.fail_stage = "hamilton_stage2";
    return out;
  }

  // final de-contraction: entering a V2 vertex z means traversing the
  // clockwise path from rm_inv(z) to z first
  std::vector<int> cyc;
  for (int lv : h2.cycle) {
    int v = ix2.to_global[lv];
    if (is_v2[v]) {
      int w = rm_inv[v];
      int x = w;
      cyc.push_back(x);
      while (fsucc[x] != -1 && !is_v2[fsucc[x]]) {
        x = fsucc[x];
        cyc.push_back(x);
      }
      cyc.push_back(v);
    } else {
      cyc.push_back(v);
    }
  }

  // verify against g plus the prescribed pairs
  {
    BitMatrix extra(n);
    for (auto [w, u] : m_edges) extra.set(w, u);
    if (static_cast<int>(cyc.size()) != n) {
      out.fail_stage = "final_verify";
      return out;
    }
    std::vector<char> seen(n, 0);
    for (int v : cyc) {
      if (seen[v]) {
        out.fail_stage = "final_verify";
        return out;
      }
      seen[v] = 1;
    }
    for (size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (!g.has_edge(a, b) && !extra.test(a, b)) {
        out.fail_stage = "final_verify";
        return out;
      }
    }
    for (auto [w, u] : m_edges) {
      bool found = false;
      for (size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i] == w && cyc[(i + 1) % cyc.size()] == u) found = true;
      if (!found) {
        out.fail_stage = "matching_containment";
        return out;
      }
    }
  }
  out.ok = true;
  out.cycle = std::move(cyc);
  return out;
}

CloseResult close_c3(const Digraph& g, const std::vector<int>& part3,
                     const std::vector<Edge>& m_edges, double eps,
                     const HamOptions& ham) {
  CloseResult out;
  int n = g.vertex_count();
  std::vector<int> v1, v2, v3;
  for (int v = 0; v < n; ++v) switch (part3[v]) {
      case 0: v1.push_back(v); break;
      case 1: v2.push_back(v); break;
      case 2: v3.push_back(v); break;
      default: throw InvariantError("part_labels", "labels must be 0..2");
    }
  int np = static_cast<int>(v2.size());
  if (static_cast<int>(v3.size()) != np || np == 0) {
    out.fail_stage = "shape";
    return out;
  }
  if (static_cast<int>(m_edges.size()) != np - static_cast<int>(v1.size()))
    throw InvariantError("matching_size", "|M| must equal |V2| - |V1|");

  std::vector<char> is_v1(n, 0), is_v2(n, 0), is_v3(n, 0), in_m(n, 0);
  for (int v : v1) is_v1[v] = 1;
  for (int v : v2) is_v2[v] = 1;
  for (int v : v3) is_v3[v] = 1;
  for (auto [w, u] : m_edges) {
    if (!is_v3[w] || !is_v2[u] || in_m[w] || in_m[u]) {
      out.fail_stage = "matching_shape";
      return out;
    }
    in_m[w] = in_m[u] = 1;
  }

  // degree audits per class at level eps
  double need = (1 - eps) * np;
  auto count_deg = [&](int v, const std::vector<char>& set, bool outward) {
    int d = 0;
    if (outward)
      for (int w : g.out(v)) d += set[w];
    else
      for (int w : g.in(v)) d += set[w];
    return d;
  };
  auto audit_fail = [&](const std::string& s) {
    out.audits_ok = false;
    out.audit_failures.push_back(s);
  };
  for (int v : v1)
    if (count_deg(v, is_v2, true) < need || count_deg(v, is_v3, false) < need) {
      audit_fail("V1 degree");
      break;
    }
  for (int v : v2)
    if (count_deg(v, is_v3, true) < need || count_deg(v, is_v1, false) < need) {
      audit_fail("V2 degree");
      break;
    }
  for (int v : v3)
    if (count_deg(v, is_v1, true) < need || count_deg(v, is_v2, false) < need) {
      audit_fail("V3 degree");
      break;
    }
  if (static_cast<double>(v1.size()) < (1 - eps) * np) audit_fail("V1 size");

  // perfect matchings (V3 \ V(M)) -> V1 and V1 -> (V2 \ V(M))
  std::vector<int> free3, free2;
  for (int v : v3)
    if (!in_m[v]) free3.push_back(v);
  for (int v : v2)
    if (!in_m[v]) free2.push_back(v);

  LocalIndex ixv1(n, v1), ixf3(n, free3), ixf2(n, free2);
  BipartiteGraph bg1;
  bg1.nl = static_cast<int>(free3.size());
  bg1.nr = static_cast<int>(v1.size());
  bg1.adj.resize(bg1.nl);
  for (int i = 0; i < bg1.nl; ++i)
    for (int x : g.out(free3[i]))
      if (is_v1[x]) bg1.adj[i].push_back(ixv1.to_local[x]);
  auto pm1 = bipartite_perfect_matching(bg1);
  if (!pm1.perfect) {
    out.fail_stage = "matching_m1";
    return out;
  }
  BipartiteGraph bg2;
  bg2.nl = static_cast<int>(v1.size());
  bg2.nr = static_cast<int>(free2.size());
  bg2.adj.resize(bg2.nl);
  for (int i = 0; i < bg2.nl; ++i)
    for (int x : g.out(v1[i]))
      if (is_v2[x] && !in_m[x]) bg2.adj[i].push_back(ixf2.to_local[x]);
  auto pm2 = bipartite_perfect_matching(bg2);
  if (!pm2.perfect) {
    out.fail_stage = "matching_m2";
    return out;
  }

  // spanning forest F of <=2-edge paths from V3 to V2
  std::vector<int> fsucc(n, -1);
  for (auto [w, u] : m_edges) fsucc[w] = u;
  for (int i = 0; i < bg1.nl; ++i) fsucc[free3[i]] = v1[pm1.matching.match_l[i]];
  for (int i = 0; i < bg2.nl; ++i) fsucc[v1[i]] = free2[pm2.matching.match_l[i]];

  std::vector<int> tm(n, -1), tm_inv(n, -1);  // path start (V3) <-> end (V2)
  for (int w : v3) {
    int x = fsucc[w];
    if (x != -1 && !is_v2[x]) x = fsucc[x];
    if (x == -1 || !is_v2[x]) {
      out.fail_stage = "forest_shape";
      return out;
    }
    tm[w] = x;
    tm_inv[x] = w;
  }

  // contracted digraph on V2
  LocalIndex ix2(n, v2);
  EdgeSetBuilder bt(ix2.size());
  for (int u : v2)
    for (int x : g.out(u))
      if (is_v3[x]) bt.add(ix2.to_local[u], ix2.to_local[tm[x]]);
  Digraph gt(ix2.size(), GraphMode::General, bt.edges);
  HamOptions inner = ham;
  inner.override_precondition = true;
  auto ht = ghouila_houri_hamilton(gt, inner);
  if (ht.status != HamStatus::Found) {
    out.fail_stage = "hamilton";
    return out;
  }

  std::vector<int> cyc;
  for (int lv : ht.cycle) {
    int z = ix2.to_global[lv];
    int w = tm_inv[z];
    cyc.push_back(w);
    int x = fsucc[w];
    while (x != z) {
      cyc.push_back(x);
      x = fsucc[x];
    }
    cyc.push_back(z);
  }

  // verify against g plus the prescribed pairs
  BitMatrix extra(n);
  for (auto [w, u] : m_edges) extra.set(w, u);
  if (static_cast<int>(cyc.size()) != n) {
    out.fail_stage = "final_verify";
    return out;
  }
  std::vector<char> seen(n, 0);
  for (int v : cyc) {
    if (seen[v]) {
      out.fail_stage = "final_verify";
      return out;
    }
    seen[v] = 1;
  }
  for (size_t i = 0; i < cyc.size(); ++i) {
    int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    if (!g.has_edge(a, b) && !extra.test(a, b)) {
      out.fail_stage = "final_verify";
      return out;
    }
  }
  for (auto [w, u] : m_edges) {
    bool found = false;
    for (size_t i = 0; i < cyc.size(); ++i)
      if (cyc[i] == w && cyc[(i + 1) % cyc.size()] == u) found = true;
    if (!found) {
      out.fail_stage = "matching_containment";
      return out;
    }
  }
  out.ok = true;
  out.cycle = std::move(cyc);
  return out;
}

}  // namespace tripack
