#pragma once

// Shared instance builders for the closing-lemma and finder tests.

#include "tripack/digraph.hpp"
#include "tripack/generators.hpp"
#include "tripack/rng.hpp"

#include <numeric>
#include <vector>

namespace tripack::testing {

// Random digraph on m vertices with edge probability p.
inline Digraph random_digraph(int m, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v && rng.bernoulli(p)) edges.emplace_back(u, v);
  return Digraph(m, GraphMode::General, std::move(edges));
}

// Random digraph patched so that every in/out degree is at least `floor`.
inline Digraph random_dense_digraph(int m, int floor_deg, Rng& rng) {
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  std::vector<int> outd(m, 0), ind(m, 0);
  auto add = [&](int u, int v) {
    if (u == v || adj[u][v]) return false;
    adj[u][v] = 1;
    ++outd[u];
    ++ind[v];
    return true;
  };
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v && rng.bernoulli(0.55)) add(u, v);
  for (int u = 0; u < m; ++u)
    while (outd[u] < floor_deg) add(u, rng.uniform_int(0, m - 1));
  for (int v = 0; v < m; ++v)
    while (ind[v] < floor_deg) add(rng.uniform_int(0, m - 1), v);
  std::vector<Edge> edges;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (adj[u][v]) edges.emplace_back(u, v);
  return Digraph(m, GraphMode::General, std::move(edges));
}

struct TriCloseInstance {
  Digraph g;
  std::vector<int> labels;  // 0 = V1, 1 = V2, 2 = V3
  std::vector<Edge> matching;
};

// Tripartite closing host: |V1| = np - p, |V2| = |V3| = np, near-complete
// clockwise blocks thinned at level eps, plus a prescribed V3->V2 matching
// of exactly p edges.
inline TriCloseInstance make_close_c3_instance(int np, int p, double eps, Rng& rng) {
  int n1 = np - p;
  int total = n1 + 2 * np;
  std::vector<int> labels(total, 0);
  int v2_base = n1, v3_base = n1 + np;
  for (int i = 0; i < np; ++i) {
    labels[v2_base + i] = 1;
    labels[v3_base + i] = 2;
  }
  std::vector<std::vector<char>> adj(total, std::vector<char>(total, 0));
  std::vector<int> outd(total, 0), ind(total, 0);
  auto add = [&](int u, int v) {
    adj[u][v] = 1;
    ++outd[u];
    ++ind[v];
  };
  for (int a = 0; a < n1; ++a)
    for (int i = 0; i < np; ++i) {
      add(a, v2_base + i);   // V1 -> V2
      add(v3_base + i, a);   // V3 -> V1
    }
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) add(v2_base + i, v3_base + j);  // V2 -> V3
  // random thinning within the eps budget (per-vertex per-block)
  int budget = static_cast<int>(eps * np / 2);
  for (int t = 0; t < budget * total; ++t) {
    int u = rng.uniform_int(0, total - 1);
    int v = rng.uniform_int(0, total - 1);
    if (u == v || !adj[u][v]) continue;
    if (outd[u] <= np - budget || ind[v] <= np - budget) continue;
    adj[u][v] = 0;
    --outd[u];
    --ind[v];
  }
  // prescribed matching on the first p vertices of V3/V2
  std::vector<Edge> m;
  for (int i = 0; i < p; ++i) {
    add(v3_base + i, v2_base + i);
    m.emplace_back(v3_base + i, v2_base + i);
  }
  std::vector<Edge> edges;
  for (int u = 0; u < total; ++u)
    for (int v = 0; v < total; ++v)
      if (adj[u][v]) edges.emplace_back(u, v);
  return {Digraph(total, GraphMode::General, std::move(edges)), labels, m};
}

struct QuadCloseInstance {
  Digraph g;
  std::vector<int> labels;  // 0 fwd-V1, 1 bwd-V1, 2 V2, 3 V3
  std::vector<Edge> matching;
  double eps;
};

// Four-partite closing host shaped like a W*-restricted structured member:
// complete V3->F, F->V2, V2->B, B->V3 blocks and an exactly (np/2)-regular
// V3->V2 graph with its complement oriented V2->V3.
inline QuadCloseInstance make_close_gbeta_instance(int np, int p, uint64_t seed) {
  Rng rng(seed);
  int f = np / 2, b = np / 2;
  int total = f + b + 2 * np;
  std::vector<int> labels(total, 0);
  int b_base = f, v2_base = f + b, v3_base = f + b + np;
  for (int i = 0; i < b; ++i) labels[b_base + i] = 1;
  for (int i = 0; i < np; ++i) {
    labels[v2_base + i] = 2;
    labels[v3_base + i] = 3;
  }
  std::vector<Edge> edges;
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < np; ++j) {
      edges.emplace_back(v3_base + j, i);           // V3 -> F
      edges.emplace_back(i, v2_base + j);           // F -> V2
    }
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < np; ++j) {
      edges.emplace_back(v2_base + j, b_base + i);  // V2 -> B
      edges.emplace_back(b_base + i, v3_base + j);  // B -> V3
    }
  auto ccw = random_regular_bipartite(np, np / 2, rng);
  std::vector<Edge> m;
  for (int w = 0; w < np; ++w)
    for (int u = 0; u < np; ++u) {
      if (ccw.test(w, u))
        edges.emplace_back(v3_base + w, v2_base + u);
      else
        edges.emplace_back(v2_base + u, v3_base + w);
    }
  for (int w = 0; w < np && static_cast<int>(m.size()) < p; ++w)
    for (int u = 0; u < np && static_cast<int>(m.size()) < p; ++u)
      if (ccw.test(w, u) && (m.empty() || (m.back().first != v3_base + w &&
                                           m.back().second != v2_base + u))) {
        // distinct endpoints only
        bool clash = false;
        for (auto [a, c] : m)
          if (a == v3_base + w || c == v2_base + u) clash = true;
        if (!clash) m.emplace_back(v3_base + w, v2_base + u);
      }
  return {Digraph(total, GraphMode::General, std::move(edges)), labels, m, 0.05};
}

}  // namespace tripack::testing
