#include "tripack/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tripack::oracle {

namespace {

// independent adjacency build: plain bool matrix from the edge list
std::vector<std::vector<char>> adjacency(const Digraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) a[u][v] = 1;
  return a;
}

void dfs_cycles(const std::vector<std::vector<char>>& a, int n,
                std::vector<int>& path, std::vector<char>& used,
                std::vector<std::vector<int>>& out, bool stop_at_first,
                bool& found) {
  if (found && stop_at_first) return;
  int u = path.back();
  if (static_cast<int>(path.size()) == n) {
    if (a[u][0]) {
      out.push_back(path);
      found = true;
    }
    return;
  }
  for (int v = 1; v < n; ++v) {
    if (used[v] || !a[u][v]) continue;
    used[v] = 1;
    path.push_back(v);
    dfs_cycles(a, n, path, used, out, stop_at_first, found);
    path.pop_back();
    used[v] = 0;
    if (found && stop_at_first) return;
  }
}

std::vector<std::vector<int>> all_cycles(const Digraph& g, bool stop_at_first) {
  int n = g.vertex_count();
  if (n > 15) throw InvariantError("oracle_cap", "enumeration capped at 15 vertices");
  auto a = adjacency(g);
  std::vector<std::vector<int>> out;
  if (n == 1) return out;
  std::vector<int> path{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  bool found = false;
  dfs_cycles(a, n, path, used, out, stop_at_first, found);
  return out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_hamilton_cycles(const Digraph& g) {
  return all_cycles(g, false);
}

bool is_hamiltonian(const Digraph& g) { return !all_cycles(g, true).empty(); }

PackingResult max_hamilton_packing_exact(const Digraph& g, int cap) {
  int n = g.vertex_count();
  if (n > 12) throw InvariantError("oracle_cap", "packing capped at 12 vertices");
  auto cycles = enumerate_hamilton_cycles(g);

  // deterministic order via a fixed hash of the vertex sequence
  auto seq_hash = [](const std::vector<int>& c) {
    uint64_t h = 1469598103934665603ULL;
    for (int v : c) {
      h ^= static_cast<uint64_t>(v) + 1;
      h *= 1099511628211ULL;
    }
    return h;
  };
  std::vector<int> order(cycles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    uint64_t hx = seq_hash(cycles[x]), hy = seq_hash(cycles[y]);
    return hx != hy ? hx < hy : cycles[x] < cycles[y];
  });

  // edge bitmask per cycle over the <=144 ordered pairs
  int words = (n * n + 63) / 64;
  std::vector<std::vector<uint64_t>> mask(cycles.size(),
                                          std::vector<uint64_t>(words, 0));
  for (size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[order[i]];
    for (size_t j = 0; j < c.size(); ++j) {
      int u = c[j], v = c[(j + 1) % c.size()];
      int b = u * n + v;
      mask[i][b / 64] |= 1ULL << (b % 64);
    }
  }

  // combinatorial ceiling: a packing uses one out- and one in-edge per vertex,
  // drawn from edges that appear in at least one cycle
  std::vector<int> out_usable(n, 0), in_usable(n, 0);
  {
    std::vector<uint64_t> any(words, 0);
    for (auto& m : mask)
      for (int w = 0; w < words; ++w) any[w] |= m[w];
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (any[(u * n + v) / 64] >> ((u * n + v) % 64) & 1) {
          ++out_usable[u];
          ++in_usable[v];
        }
  }
  int ceiling = n == 0 ? 0 : out_usable[0];
  for (int v = 0; v < n; ++v)
    ceiling = std::min({ceiling, out_usable[v], in_usable[v]});
  if (cap > 0) ceiling = std::min(ceiling, cap);

  PackingResult best;
  std::vector<int> chosen;
  std::vector<uint64_t> used(words, 0);
  bool done = false;

  auto record = [&]() {
    if (static_cast<int>(chosen.size()) > best.k) {
      best.k = static_cast<int>(chosen.size());
      best.cycles.clear();
      for (int i : chosen) best.cycles.push_back(cycles[order[i]]);
      if (best.k >= ceiling) done = true;
    }
  };

  // DFS in increasing index order (symmetry breaking)
  auto rec = [&](auto&& self, size_t from) -> void {
    if (done) return;
    record();
    if (static_cast<int>(chosen.size() + (cycles.size() - from)) <= best.k)
      return;  // not enough candidates left
    for (size_t i = from; i < cycles.size() && !done; ++i) {
      bool clash = false;
      for (int w = 0; w < words && !clash; ++w)
        if (mask[i][w] & used[w]) clash = true;
      if (clash) continue;
      for (int w = 0; w < words; ++w) used[w] |= mask[i][w];
      chosen.push_back(static_cast<int>(i));
      self(self, i + 1);
      chosen.pop_back();
      for (int w = 0; w < words; ++w) used[w] &= ~mask[i][w];
    }
  };
  rec(rec, 0);
  return best;
}

long long exact_nearest_gbeta(const TripartiteTournament& t) {
  int n = t.n();
  if (n > 3) throw InvariantError("oracle_cap", "exact distance capped at n = 3");
  const auto& g = t.graph();

  // all 0/1 n x n matrices with row and column sums equal to d
  auto regular_bipartite_graphs = [&](int d) {
    std::vector<int> masks;  // candidate rows as bitmasks
    for (int m = 0; m < (1 << n); ++m)
      if (std::popcount(static_cast<unsigned>(m)) == d) masks.push_back(m);
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n);
    auto rec = [&](auto&& self, int row, std::vector<int>& colsum) -> void {
      if (row == n) {
        for (int c = 0; c < n; ++c)
          if (colsum[c] != d) return;
        out.push_back(cur);
        return;
      }
      for (int m : masks) {
        bool ok = true;
        for (int c = 0; c < n && ok; ++c)
          if ((m >> c & 1) && colsum[c] + 1 > d) ok = false;
        if (!ok) continue;
        cur[row] = m;
        for (int c = 0; c < n; ++c) colsum[c] += m >> c & 1;
        self(self, row + 1, colsum);
        for (int c = 0; c < n; ++c) colsum[c] -= m >> c & 1;
      }
    };
    std::vector<int> colsum(n, 0);
    rec(rec, 0, colsum);
    return out;
  };

  std::array<std::array<int, 3>, 6> perms{{{0, 1, 2},
                                           {1, 2, 0},
                                           {2, 0, 1},
                                           {0, 2, 1},
                                           {2, 1, 0},
                                           {1, 0, 2}}};
  long long best = -1;
  for (const auto& roles : perms) {
    int c1 = roles[0], c2 = roles[1], c3 = roles[2];
    for (int split = 0; split < (1 << n); ++split) {
      int bn = std::popcount(static_cast<unsigned>(split));
      if (2 * bn > n) continue;  // beta <= 1/2
      for (const auto& ccw_rows : regular_bipartite_graphs(bn)) {
        long long mism = 0;
        // V1 <-> V2 and V1 <-> V3
        for (int p = 0; p < n; ++p) {
          bool back = split >> p & 1;
          int v1 = c1 * n + p;
          for (int q = 0; q < n; ++q) {
            int v2 = c2 * n + q, v3 = c3 * n + q;
            bool model_12 = !back;  // model edge v1->v2 iff forward
            if (model_12 != g.has_edge(v1, v2)) ++mism;
            bool model_31 = !back;  // model edge v3->v1 iff forward
            if (model_31 != g.has_edge(v3, v1)) ++mism;
          }
        }
        // V3 <-> V2
        for (int w = 0; w < n; ++w)
          for (int u = 0; u < n; ++u) {
            bool model_32 = ccw_rows[w] >> u & 1;
            if (model_32 != g.has_edge(c3 * n + w, c2 * n + u)) ++mism;
          }
        long long dist = 2 * mism;  // each differing pair flips both directions
        if (best < 0 || dist < best) best = dist;
      }
    }
  }
  return best;
}

bool exact_expansion_check(const Digraph& g, const ExpansionParams& p) {
  int n = g.vertex_count();
  if (n > 12) throw InvariantError("oracle_cap", "exact expansion capped at 12");
  auto a = adjacency(g);
  int thr = static_cast<int>(std::ceil(p.nu * n - 1e-9));
  int lo = static_cast<int>(std::ceil(p.tau * n - 1e-9));
  int hi = static_cast<int>(std::floor((1 - p.tau) * n + 1e-9));
  for (int mask = 0; mask < (1 << n); ++mask) {
    int sz = std::popcount(static_cast<unsigned>(mask));
    if (sz < lo || sz > hi) continue;
    int rn = 0;
    for (int v = 0; v < n; ++v) {
      int d = 0;
      for (int u = 0; u < n; ++u)
        if ((mask >> u & 1) && a[u][v]) ++d;
      if (d >= thr) ++rn;
    }
    if (rn < sz + thr) return false;
  }
  return true;
}

}  // namespace tripack::oracle
