#include "tripack/factorization.hpp"

#include "tripack/matching.hpp"
#include "tripack/rng.hpp"

#include <algorithm>
#include <numeric>

namespace tripack {

ResidualGraph::ResidualGraph(const Digraph& g)
    : n_(g.vertex_count()), adj_(g.vertex_count()), out_(g.vertex_count()),
      in_(g.vertex_count()), m_(g.edge_count()) {
  for (auto [u, v] : g.edges()) {
    adj_.set(u, v);
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
}

void ResidualGraph::remove_edge(int u, int v) {
  if (!adj_.test(u, v)) throw InvariantError("edge_present", "edge absent");
  adj_.reset(u, v);
  std::erase(out_[u], v);
  std::erase(in_[v], u);
  --m_;
}

void ResidualGraph::remove_factor(const CycleFactor& f) {
  for (auto [u, v] : f.edges()) remove_edge(u, v);
}

std::vector<Edge> ResidualGraph::edges() const {
  std::vector<Edge> e;
  e.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : out_[u]) e.emplace_back(u, v);
  std::sort(e.begin(), e.end());
  return e;
}

namespace {

// perfect matching in the split graph (v_out left, v_in right)
std::optional<CycleFactor> factor_from_split(
    int n, const std::vector<std::vector<int>>& out_adj, uint64_t seed) {
  BipartiteGraph b;
  b.nl = b.nr = n;
  b.adj = out_adj;
  if (seed != 0) {
    Rng rng(seed);
    for (auto& l : b.adj) rng.shuffle(l);
  }
  auto m = hopcroft_karp(b);
  if (m.size != n) return std::nullopt;
  return CycleFactor(m.match_l);
}

}  // namespace

CycleFactor extract_one_factor(const Digraph& g, uint64_t seed) {
  if (g.regular_degree() < 1)
    throw InvariantError("regular", "graph must be d-regular with d >= 1");
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    adj[v].assign(g.out(v).begin(), g.out(v).end());
  auto f = factor_from_split(g.vertex_count(), adj, seed);
  if (!f)
    throw InvariantError("one_factor", "no perfect matching in a regular split graph");
  return *f;
}

std::optional<CycleFactor> extract_one_factor(const ResidualGraph& g, uint64_t seed) {
  return factor_from_split(g.vertex_count(), g.out(), seed);
}

std::vector<CycleFactor> one_factorization(const Digraph& g, uint64_t seed) {
  int d = g.regular_degree();
  if (d < 0) throw InvariantError("regular", "graph must be regular");
  ResidualGraph res(g);
  Rng rng(seed);
  std::vector<CycleFactor> out;
  for (int i = 0; i < d; ++i) {
    auto f = extract_one_factor(res, rng.next_u64());
    if (!f)
      throw InvariantError("one_factorization",
                           "residual regular graph lost its perfect matching");
    res.remove_factor(*f);
    out.push_back(std::move(*f));
  }
  if (res.edge_count() != 0)
    throw InvariantError("one_factorization", "factors do not exhaust the edge set");
  return out;
}

namespace {

struct CoverState {
  std::vector<int> succ;
  std::vector<int> cycle_id;
  std::vector<std::vector<int>> members;  // cycle id -> vertices

  explicit CoverState(const CycleFactor& f) : succ(f.size()), cycle_id(f.size(), -1) {
    for (int v = 0; v < f.size(); ++v) succ[v] = f.succ(v);
    for (const auto& c : f.cycles()) {
      int id = static_cast<int>(members.size());
      for (int v : c) cycle_id[v] = id;
      members.push_back(c);
    }
  }

  int live_cycles() const {
    int k = 0;
    for (const auto& m : members)
      if (!m.empty()) ++k;
    return k;
  }

  // splice cycles a and b via edges (u->succ_u in a) and (x->succ_x in b),
  // replacing them with u->succ_x and x->succ_u; degree profile unchanged
  void splice(int u, int x) {
    int a = cycle_id[u], b = cycle_id[x];
    int su = succ[u], sx = succ[x];
    succ[u] = sx;
    succ[x] = su;
    for (int v : members[b]) cycle_id[v] = a;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<char> seen(succ.size(), 0);
    std::vector<std::vector<int>> out;
    for (size_t v = 0; v < succ.size(); ++v) {
      if (seen[v]) continue;
      std::vector<int> c;
      int w = static_cast<int>(v);
      while (!seen[w]) {
        seen[w] = 1;
        c.push_back(w);
        w = succ[w];
      }
      out.push_back(std::move(c));
    }
    return out;
  }
};

// greedy splicing pass; returns achieved cycle count
int splice_pass(CoverState& st, const std::function<bool(int, int)>& has_edge,
                int target_count) {
  bool progress = true;
  while (progress && st.live_cycles() > target_count) {
    progress = false;
    // order live cycles by decreasing size
    std::vector<int> live;
    for (size_t i = 0; i < st.members.size(); ++i)
      if (!st.members[i].empty()) live.push_back(static_cast<int>(i));
    std::sort(live.begin(), live.end(), [&](int a, int b) {
      return st.members[a].size() > st.members[b].size();
    });
    for (size_t ai = 0; ai + 1 < live.size() && !progress; ++ai)
      for (size_t bi = ai + 1; bi < live.size() && !progress; ++bi) {
        int a = live[ai], b = live[bi];
        for (int u : st.members[a]) {
          if (progress) break;
          for (int x : st.members[b]) {
            // splice requires u->succ(x) and x->succ(u) available
            if (has_edge(u, st.succ[x]) && has_edge(x, st.succ[u])) {
              st.splice(u, x);
              progress = true;
              break;
            }
          }
        }
      }
  }
  return st.live_cycles();
}

}  // namespace

std::vector<std::vector<int>> merge_factor(
    const CycleFactor& f, const std::function<bool(int, int)>& has_edge,
    int target_count) {
  CoverState st(f);
  splice_pass(st, has_edge, target_count);
  return st.cycles();
}

CycleCover merge_into_few_cycles(const Digraph& g, MergeTargets t, uint64_t seed) {
  int d = g.regular_degree();
  if (d < 1) throw InvariantError("regular", "graph must be d-regular with d >= 1");
  int nhat = g.vertex_count();
  bool oriented = g.mode() == GraphMode::Oriented;
  int count_target = t.target_count;
  if (count_target <= 0)
    count_target = std::max(1, oriented ? nhat / (2 * d + 1) : nhat / (d + 1));

  auto has_edge = [&g](int u, int v) { return g.has_edge(u, v); };
  Rng rng(seed);
  CycleCover best;
  int best_count = -1;
  for (int attempt = 0; attempt < std::max(1, t.attempts); ++attempt) {
    CycleFactor f = extract_one_factor(g, attempt == 0 ? 0 : rng.next_u64());
    CoverState st(f);
    int count = splice_pass(st, has_edge, count_target);
    if (best_count < 0 || count < best_count) {
      best_count = count;
      best.cycles = st.cycles();
    }
    if (best_count <= count_target) break;
  }

  MergeReport& rep = best.report;
  rep.cycle_count = static_cast<int>(best.cycles.size());
  rep.min_cycle_length = nhat;
  for (const auto& c : best.cycles)
    rep.min_cycle_length = std::min(rep.min_cycle_length, static_cast<int>(c.size()));
  rep.count_target = count_target;
  rep.length_target = d / 2.0;
  rep.count_ok = rep.cycle_count <= count_target;
  rep.length_ok = rep.min_cycle_length >= rep.length_target;
  return best;
}

}  // namespace tripack
