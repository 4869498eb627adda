#include "tripack/matching.hpp"

#include <limits>
#include <queue>

namespace tripack {

namespace {
constexpr int kInf = std::numeric_limits<int>::max();

struct HkState {
  const BipartiteGraph& g;
  Matching& m;
  std::vector<int> dist;

  bool bfs() {
    std::queue<int> q;
    dist.assign(g.nl, kInf);
    for (int u = 0; u < g.nl; ++u)
      if (m.match_l[u] == -1) {
        dist[u] = 0;
        q.push(u);
      }
    bool found = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        int w = m.match_r[v];
        if (w == -1) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : g.adj[u]) {
      int w = m.match_r[v];
      if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
        m.match_l[u] = v;
        m.match_r[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  }
};
}  // namespace

Matching hopcroft_karp(const BipartiteGraph& g) {
  Matching m;
  m.match_l.assign(g.nl, -1);
  m.match_r.assign(g.nr, -1);
  HkState st{g, m, {}};
  while (st.bfs())
    for (int u = 0; u < g.nl; ++u)
      if (m.match_l[u] == -1 && st.dfs(u)) ++m.size;
  return m;
}

std::vector<int> hall_violator(const BipartiteGraph& g, const Matching& m) {
  if (m.size == g.nl) return {};
  // alternating reachability from unmatched left vertices
  std::vector<char> seen_l(g.nl, 0), seen_r(g.nr, 0);
  std::queue<int> q;
  for (int u = 0; u < g.nl; ++u)
    if (m.match_l[u] == -1) {
      seen_l[u] = 1;
      q.push(u);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u]) {
      if (seen_r[v]) continue;
      seen_r[v] = 1;
      int w = m.match_r[v];
      if (w != -1 && !seen_l[w]) {
        seen_l[w] = 1;
        q.push(w);
      }
    }
  }
  std::vector<int> s;
  for (int u = 0; u < g.nl; ++u)
    if (seen_l[u]) s.push_back(u);
  return s;  // |N(S)| = reachable right vertices, all matched: |N(S)| < |S|
}

}  // namespace tripack
