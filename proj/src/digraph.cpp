#include "tripack/digraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace tripack {

long long BitMatrix::popcount() const {
  long long c = 0;
  for (uint64_t w : bits_) c += std::popcount(w);
  return c;
}

Digraph::Digraph(int vertex_count, GraphMode mode, std::vector<Edge> edges)
    : n_(vertex_count), mode_(mode), edges_(std::move(edges)), adj_(vertex_count),
      out_(vertex_count), in_(vertex_count) {
  if (n_ < 1) throw InvariantError("vertex_count", "must be >= 1");
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw InvariantError("vertex_range", "edge endpoint out of range");
    if (u == v) throw InvariantError("no_loops", "loop at vertex " + std::to_string(u));
    if (i > 0 && edges_[i] == edges_[i - 1])
      throw InvariantError("no_duplicate_edges", "duplicate edge");
    adj_.set(u, v);
  }
  if (mode_ == GraphMode::Oriented) {
    for (auto [u, v] : edges_)
      if (u < v && adj_.test(v, u))
        throw InvariantError("oriented", "both directions present between " +
                                             std::to_string(u) + " and " + std::to_string(v));
  }
  for (auto [u, v] : edges_) {
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (auto& l : in_) std::sort(l.begin(), l.end());
}

std::pair<int, int> Digraph::degrees(int v) const {
  if (v < 0 || v >= n_) throw InvariantError("vertex_range", "vertex out of range");
  return {out_degree(v), in_degree(v)};
}

int Digraph::regular_degree() const {
  int d = out_degree(0);
  for (int v = 0; v < n_; ++v)
    if (out_degree(v) != d || in_degree(v) != d) return -1;
  return d;
}

int Digraph::min_semidegree() const {
  int d = n_;
  for (int v = 0; v < n_; ++v) d = std::min({d, out_degree(v), in_degree(v)});
  return d;
}

int Digraph::max_semidegree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max({d, out_degree(v), in_degree(v)});
  return d;
}

bool Digraph::is_strongly_connected() const {
  auto reaches_all = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          stack.push_back(w);
        }
    }
    return cnt == n_;
  };
  return reaches_all(out_) && reaches_all(in_);
}

void DigraphBuilder::add_edge(int u, int v) {
  if (u == v) throw InvariantError("no_loops", "loop");
  if (adj_.test(u, v)) throw InvariantError("no_duplicate_edges", "already present");
  if (mode_ == GraphMode::Oriented && adj_.test(v, u))
    throw InvariantError("oriented", "antiparallel edge present");
  adj_.set(u, v);
  ++outdeg_[u];
  ++indeg_[v];
  ++m_;
}

void DigraphBuilder::remove_edge(int u, int v) {
  if (!adj_.test(u, v)) throw InvariantError("edge_present", "edge absent");
  adj_.reset(u, v);
  --outdeg_[u];
  --indeg_[v];
  --m_;
}

void DigraphBuilder::reverse_edge(int u, int v) {
  remove_edge(u, v);
  add_edge(v, u);
}

std::vector<Edge> DigraphBuilder::edges() const {
  std::vector<Edge> e;
  e.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (adj_.test(u, v)) e.emplace_back(u, v);
  return e;
}

long long BipartiteCounts::total() const {
  long long s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += count[i][j];
  return s;
}

bool BipartiteCounts::clockwise_balanced() const {
  auto c = clockwise();
  return c[0] == c[1] && c[1] == c[2];
}

bool BipartiteCounts::counterclockwise_balanced() const {
  auto c = counterclockwise();
  return c[0] == c[1] && c[1] == c[2];
}

TripartiteTournament::TripartiteTournament(Digraph g, Tripartition parts)
    : g_(std::move(g)), parts_(parts) {
  if (g_.vertex_count() != parts_.vertex_count())
    throw InvariantError("balanced_partition", "vertex count is not 3n");
  if (g_.mode() != GraphMode::Oriented)
    throw InvariantError("oriented", "tournament must be in oriented mode");
  for (auto [u, v] : g_.edges())
    if (parts_.same_class(u, v))
      throw InvariantError("no_intra_class_edges", "edge inside a class");
  // every cross-class pair carries exactly one edge
  long long expected = 3LL * parts_.n * parts_.n;
  if (g_.edge_count() != expected)
    throw InvariantError("orientation_complete",
                         "expected " + std::to_string(expected) + " edges, got " +
                             std::to_string(g_.edge_count()));
}

bool TripartiteTournament::is_regular() const {
  return g_.regular_degree() == parts_.n;
}

EdgeClass classify_edge(const TripartiteTournament& t, int u, int v) {
  if (!t.graph().has_edge(u, v)) throw InvariantError("edge_present", "edge absent");
  int cu = t.parts().class_of(u), cv = t.parts().class_of(v);
  if (cu == cv) throw InvariantError("no_intra_class_edges", "intra-class edge");
  return (cu + 1) % 3 == cv ? EdgeClass::Clockwise : EdgeClass::Counterclockwise;
}

BipartiteCounts bipartite_counts(const Tripartition& parts,
                                 std::span<const Edge> edges) {
  BipartiteCounts c;
  for (auto [u, v] : edges) c.count[parts.class_of(u)][parts.class_of(v)]++;
  return c;
}

BipartiteCounts bipartite_counts(const TripartiteTournament& t,
                                 std::span<const Edge> edges) {
  for (auto [u, v] : edges)
    if (!t.graph().has_edge(u, v))
      throw InvariantError("edge_subset", "edge not in tournament");
  return bipartite_counts(t.parts(), edges);
}

BipartiteCounts bipartite_counts(const TripartiteTournament& t) {
  return bipartite_counts(t.parts(), t.graph().edges());
}

long long edit_distance(const TripartiteTournament& g,
                        const TripartiteTournament& h) {
  if (g.parts().n != h.parts().n)
    throw InvariantError("same_partition", "tripartitions differ");
  long long diff = 0;
  for (auto [u, v] : g.graph().edges())
    if (!h.graph().has_edge(u, v)) ++diff;
  for (auto [u, v] : h.graph().edges())
    if (!g.graph().has_edge(u, v)) ++diff;
  return diff;
}

uint64_t graph_content_hash(const Digraph& g) {
  uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto feed = [&](uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  feed(static_cast<uint64_t>(g.vertex_count()));
  feed(g.mode() == GraphMode::Oriented ? 1 : 2);
  for (auto [u, v] : g.edges()) feed((static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v));
  return h;
}

}  // namespace tripack
