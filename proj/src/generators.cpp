#include "tripack/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tripack {

bool GBetaModel::is_backward(int v) const { return backward[v % n] != 0; }

bool GBetaModel::edge_in_model(int u, int v) const {
  int cu = u / n, cv = v / n;
  if (cu == cv) return false;
  // map block class -> role index (0 = V1, 1 = V2, 2 = V3)
  int ru = -1, rv = -1;
  for (int i = 0; i < 3; ++i) {
    if (roles[i] == cu) ru = i;
    if (roles[i] == cv) rv = i;
  }
  int pu = u % n, pv = v % n;
  if (ru == 0 && rv == 1) return !backward[pu];      // ->V1 -> V2
  if (rv == 0 && ru == 1) return backward[pv];       // V2 -> <-V1
  if (ru == 0 && rv == 2) return backward[pu];       // <-V1 -> V3
  if (rv == 0 && ru == 2) return !backward[pv];      // V3 -> ->V1
  if (ru == 2 && rv == 1) return ccw.test(pu, pv);   // V3 -> V2
  if (ru == 1 && rv == 2) return !ccw.test(pv, pu);  // V2 -> V3 (complement)
  return false;
}

TripartiteTournament GBetaModel::realize() const {
  std::vector<Edge> edges;
  edges.reserve(3LL * n * n);
  for (int u = 0; u < 3 * n; ++u)
    for (int v = u + 1; v < 3 * n; ++v) {
      if (u / n == v / n) continue;
      if (edge_in_model(u, v))
        edges.emplace_back(u, v);
      else
        edges.emplace_back(v, u);
    }
  return TripartiteTournament(Digraph(3 * n, GraphMode::Oriented, std::move(edges)),
                              Tripartition{n});
}

void GBetaModel::validate() const {
  if (n < 1) throw InvariantError("class_size", "n must be >= 1");
  {
    std::array<int, 3> sorted = roles;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2})
      throw InvariantError("roles", "roles must be a permutation of the classes");
  }
  if (beta_n < 0 || 2 * beta_n > n)
    throw InvariantError("beta_range", "need 0 <= beta <= 1/2");
  int cnt = 0;
  for (int p = 0; p < n; ++p) cnt += backward[p] ? 1 : 0;
  if (cnt != beta_n)
    throw InvariantError("backward_size", "|<-V1| must equal beta*n");
  for (int w = 0; w < n; ++w) {
    int row = 0;
    for (int u = 0; u < n; ++u) row += ccw.test(w, u) ? 1 : 0;
    if (row != beta_n) throw InvariantError("ccw_regular", "ccw row degree != beta*n");
  }
  for (int u = 0; u < n; ++u) {
    int col = 0;
    for (int w = 0; w < n; ++w) col += ccw.test(w, u) ? 1 : 0;
    if (col != beta_n) throw InvariantError("ccw_regular", "ccw column degree != beta*n");
  }
}

TripartiteTournament blowup_c3(int n) {
  if (n < 1) throw InvariantError("class_size", "n must be >= 1");
  std::vector<Edge> edges;
  edges.reserve(3LL * n * n);
  for (int c = 0; c < 3; ++c) {
    int nc = (c + 1) % 3;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) edges.emplace_back(c * n + i, nc * n + j);
  }
  return TripartiteTournament(Digraph(3 * n, GraphMode::Oriented, std::move(edges)),
                              Tripartition{n});
}

BitMatrix random_regular_bipartite(int n, int d, Rng& rng) {
  if (d < 0 || d > n) throw InvariantError("degree_feasible", "need 0 <= d <= n");
  BitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m.set(i, (i + j) % n);
  if (d == 0 || d == n) return m;
  // 2-switches keep both degree sequences exact
  long long switches = 20LL * n * d;
  for (long long s = 0; s < switches; ++s) {
    int a = rng.uniform_int(0, n - 1), b = rng.uniform_int(0, n - 1);
    int x = rng.uniform_int(0, n - 1), y = rng.uniform_int(0, n - 1);
    if (a == b || x == y) continue;
    if (m.test(a, x) && m.test(b, y) && !m.test(a, y) && !m.test(b, x)) {
      m.reset(a, x);
      m.reset(b, y);
      m.set(a, y);
      m.set(b, x);
    }
  }
  return m;
}

std::pair<GBetaModel, TripartiteTournament> gen_gbeta(int n, double beta,
                                                      uint64_t seed) {
  double bn = beta * n;
  int beta_n = static_cast<int>(std::llround(bn));
  if (std::abs(bn - beta_n) > 1e-9)
    throw InvariantError("beta_integral", "beta*n must be an integer");
  if (beta < -1e-12 || beta > 0.5 + 1e-12)
    throw InvariantError("beta_range", "need 0 <= beta <= 1/2");
  Rng rng(seed);
  GBetaModel model;
  model.n = n;
  model.beta_n = beta_n;
  model.backward.assign(n, 0);
  for (int p = n - beta_n; p < n; ++p) model.backward[p] = 1;
  model.ccw = random_regular_bipartite(n, beta_n, rng);
  model.validate();
  return {model, model.realize()};
}

TripartiteTournament gen_t_triangle(int n) {
  auto base = blowup_c3(n);
  DigraphBuilder b(3 * n, GraphMode::Oriented);
  for (auto [u, v] : base.graph().edges()) b.add_edge(u, v);
  b.reverse_edge(0, n);
  b.reverse_edge(n, 2 * n);
  b.reverse_edge(2 * n, 0);
  return TripartiteTournament(b.build(), Tripartition{n});
}

namespace {

// Find a directed 3- or 4-cycle through random vertices; reversal of any
// directed cycle preserves every in/out degree and orientation-completeness.
bool try_reverse_random_cycle(DigraphBuilder& b, const Tripartition& parts, Rng& rng) {
  int n3 = parts.vertex_count();
  int u = rng.uniform_int(0, n3 - 1);
  // sample out-neighbour of u uniformly: cross-class vertices with edge u->w
  auto random_out = [&](int from, auto pred) -> int {
    int pick = -1, seen = 0;
    for (int w = 0; w < n3; ++w) {
      if (w == from || parts.same_class(from, w)) continue;
      if (!b.has_edge(from, w) || !pred(w)) continue;
      ++seen;
      if (rng.uniform_int(1, seen) == 1) pick = w;
    }
    return pick;
  };
  int v = random_out(u, [](int) { return true; });
  if (v == -1) return false;
  int w = random_out(v, [&](int x) { return x != u; });
  if (w == -1) return false;
  if (b.has_edge(w, u) && rng.uniform_int(0, 1) == 0) {
    b.reverse_edge(u, v);
    b.reverse_edge(v, w);
    b.reverse_edge(w, u);
    return true;
  }
  int x = random_out(w, [&](int y) { return y != u && y != v; });
  if (x != -1 && b.has_edge(x, u)) {
    b.reverse_edge(u, v);
    b.reverse_edge(v, w);
    b.reverse_edge(w, x);
    b.reverse_edge(x, u);
    return true;
  }
  if (b.has_edge(w, u)) {
    b.reverse_edge(u, v);
    b.reverse_edge(v, w);
    b.reverse_edge(w, u);
    return true;
  }
  return false;
}

}  // namespace

TripartiteTournament randomize_by_cycle_reversals(const TripartiteTournament& t,
                                                  long long steps, uint64_t seed) {
  DigraphBuilder b(t.graph().vertex_count(), GraphMode::Oriented);
  for (auto [u, v] : t.graph().edges()) b.add_edge(u, v);
  Rng rng(seed);
  long long done = 0, attempts = 0;
  while (done < steps && attempts < 20 * steps + 100) {
    ++attempts;
    if (try_reverse_random_cycle(b, t.parts(), rng)) ++done;
  }
  return TripartiteTournament(b.build(), t.parts());
}

TripartiteTournament gen_random_regular_tournament(int n, uint64_t seed,
                                                   long long steps) {
  return randomize_by_cycle_reversals(blowup_c3(n), steps, seed);
}

std::pair<Digraph, Tripartition> gen_random_regular_tripartite_digraph(
    int n, int d, uint64_t seed) {
  if (d < n || d > 2 * n)
    throw InvariantError("degree_feasible", "need n <= d <= 2n");
  Rng rng(seed);
  Tripartition parts{n};
  DigraphBuilder b(3 * n, GraphMode::General);

  // d edge-disjoint cycle factors: a clockwise ones and b counterclockwise,
  // each family built from rows of Latin squares (random permutation composed
  // with cyclic shifts), which keeps the factors pairwise edge-disjoint.
  int cw = std::min(n, (d + 1) / 2), ccw = d - cw;
  auto latin_rows = [&](int rows) {
    // rows x n matrix of permutations: sigma_k(i) = pi(i) + k mod n
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    rng.shuffle(pi);
    std::vector<int> offsets(n);
    std::iota(offsets.begin(), offsets.end(), 0);
    rng.shuffle(offsets);
    std::vector<std::vector<int>> out(rows, std::vector<int>(n));
    for (int k = 0; k < rows; ++k)
      for (int i = 0; i < n; ++i) out[k][i] = (pi[i] + offsets[k]) % n;
    return out;
  };
  // clockwise factors: V1->V2, V2->V3, V3->V1
  auto f12 = latin_rows(cw), f23 = latin_rows(cw), f31 = latin_rows(cw);
  for (int k = 0; k < cw; ++k)
    for (int i = 0; i < n; ++i) {
      b.add_edge(i, n + f12[k][i]);
      b.add_edge(n + i, 2 * n + f23[k][i]);
      b.add_edge(2 * n + i, f31[k][i]);
    }
  // counterclockwise factors: V1->V3, V3->V2, V2->V1
  auto g13 = latin_rows(ccw), g32 = latin_rows(ccw), g21 = latin_rows(ccw);
  for (int k = 0; k < ccw; ++k)
    for (int i = 0; i < n; ++i) {
      b.add_edge(i, 2 * n + g13[k][i]);
      b.add_edge(2 * n + i, n + g32[k][i]);
      b.add_edge(n + i, g21[k][i]);
    }

  // degree-preserving 2-switches for randomisation
  auto edges = b.edges();
  long long switches = 10LL * edges.size();
  for (long long s = 0; s < switches; ++s) {
    auto e1 = edges[rng.uniform_int(0, static_cast<int>(edges.size()) - 1)];
    auto e2 = edges[rng.uniform_int(0, static_cast<int>(edges.size()) - 1)];
    auto [u, v] = e1;
    auto [x, y] = e2;
    if (!b.has_edge(u, v) || !b.has_edge(x, y)) continue;
    if (u == x || v == y || u == y || v == x) continue;
    if (parts.same_class(u, y) || parts.same_class(x, v)) continue;
    if (b.has_edge(u, y) || b.has_edge(x, v)) continue;
    b.remove_edge(u, v);
    b.remove_edge(x, y);
    b.add_edge(u, y);
    b.add_edge(x, v);
  }
  return {b.build(), parts};
}

TripartiteTournament perturb(const TripartiteTournament& t, int k, uint64_t seed) {
  long long pairs_total = 3LL * t.n() * t.n();
  if (k < 0 || k > pairs_total)
    throw InvariantError("perturbation_size", "k exceeds number of cross pairs");
  Rng rng(seed);
  // sample k distinct cross pairs by index
  std::vector<long long> idx(pairs_total);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  int n = t.n();
  std::vector<Edge> pairs;
  pairs.reserve(k);
  // cross pairs enumerated as (class pair, position pair)
  for (int i = 0; i < k; ++i) {
    long long id = idx[i];
    int block = static_cast<int>(id / (static_cast<long long>(n) * n));  // 0: (0,1), 1: (1,2), 2: (2,0)
    long long rem = id % (static_cast<long long>(n) * n);
    int a = static_cast<int>(rem / n), c = static_cast<int>(rem % n);
    int u = block * n + a;
    int v = ((block + 1) % 3) * n + c;
    pairs.emplace_back(u, v);
  }
  return perturb_pairs(t, pairs);
}

TripartiteTournament perturb_pairs(const TripartiteTournament& t,
                                   std::span<const Edge> pairs) {
  DigraphBuilder b(t.graph().vertex_count(), GraphMode::Oriented);
  for (auto [u, v] : t.graph().edges()) b.add_edge(u, v);
  for (auto [u, v] : pairs) {
    if (b.has_edge(u, v))
      b.reverse_edge(u, v);
    else if (b.has_edge(v, u))
      b.reverse_edge(v, u);
    else
      throw InvariantError("cross_pair", "pair carries no edge");
  }
  return TripartiteTournament(b.build(), t.parts());
}

}  // namespace tripack
