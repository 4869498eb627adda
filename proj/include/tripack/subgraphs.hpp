#pragma once

#include "tripack/digraph.hpp"

#include <optional>
#include <vector>

namespace tripack {

// Membership bitset over ordered vertex pairs, used to track edge usage
// across pipeline stages.
class EdgeBitset {
 public:
  EdgeBitset() = default;
  explicit EdgeBitset(int n) : n_(n), bits_(n) {}
  bool test(int u, int v) const { return bits_.test(u, v); }
  void set(int u, int v) {
    if (!bits_.test(u, v)) {
      bits_.set(u, v);
      ++m_;
    }
  }
  void reset(int u, int v) {
    if (bits_.test(u, v)) {
      bits_.reset(u, v);
      --m_;
    }
  }
  long long count() const { return m_; }
  int n() const { return n_; }
  void unite(const EdgeBitset& o) {
    bits_.unite(o.bits_);
    m_ = bits_.popcount();
  }

 private:
  int n_ = 0;
  BitMatrix bits_;
  long long m_ = 0;
};

// Edge subset in which every vertex has out-degree <= 1 and in-degree <= 1,
// stored as successor/predecessor arrays with -1 for "absent". This encoding
// is exact for forests, factors and single cycles.
class UnitCapGraph {
 public:
  UnitCapGraph() = default;
  explicit UnitCapGraph(int n) : succ_(n, -1), pred_(n, -1) {}

  int size() const { return static_cast<int>(succ_.size()); }
  int edge_count() const { return m_; }
  int succ(int v) const { return succ_[v]; }
  int pred(int v) const { return pred_[v]; }
  bool has_edge(int u, int v) const { return succ_[u] == v; }
  bool can_add(int u, int v) const {
    return u != v && succ_[u] == -1 && pred_[v] == -1;
  }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  int out_degree(int v) const { return succ_[v] == -1 ? 0 : 1; }
  int in_degree(int v) const { return pred_[v] == -1 ? 0 : 1; }
  bool touches(int v) const { return succ_[v] != -1 || pred_[v] != -1; }

  std::vector<Edge> edges() const;

  // true if adding (u,v) would close a directed cycle (path from v to u)
  bool creates_cycle(int u, int v) const;

 private:
  std::vector<int> succ_, pred_;
  int m_ = 0;
};

// Vertex-disjoint directed paths. add_edge rejects anything that would close
// a cycle, so validity is maintained rather than checked after the fact.
class LinearForest {
 public:
  LinearForest() = default;
  explicit LinearForest(int n) : g_(n) {}

  int size() const { return g_.size(); }
  int edge_count() const { return g_.edge_count(); }
  int succ(int v) const { return g_.succ(v); }
  int pred(int v) const { return g_.pred(v); }
  bool has_edge(int u, int v) const { return g_.has_edge(u, v); }
  bool can_add(int u, int v) const {
    return g_.can_add(u, v) && !g_.creates_cycle(u, v);
  }
  void add_edge(int u, int v);
  void remove_edge(int u, int v) { g_.remove_edge(u, v); }
  int out_degree(int v) const { return g_.out_degree(v); }
  int in_degree(int v) const { return g_.in_degree(v); }
  bool touches(int v) const { return g_.touches(v); }
  std::vector<Edge> edges() const { return g_.edges(); }

  // path startpoints: out-edge but no in-edge
  std::vector<int> startpoints() const;
  // path endpoints: in-edge but no out-edge
  std::vector<int> endpoints() const;
  // maximal paths as vertex sequences (each with >= 1 edge)
  std::vector<std::vector<int>> paths() const;

 private:
  UnitCapGraph g_;
};

// Spanning 1-regular subgraph: disjoint cycles covering the host vertex set.
class CycleFactor {
 public:
  CycleFactor() = default;
  // successor permutation; validates 1-regularity
  explicit CycleFactor(std::vector<int> succ);

  int size() const { return static_cast<int>(succ_.size()); }
  int succ(int v) const { return succ_[v]; }
  bool has_edge(int u, int v) const { return succ_[u] == v; }
  std::vector<Edge> edges() const;
  std::vector<std::vector<int>> cycles() const;

 private:
  std::vector<int> succ_;
};

// degree <= 1 both ways and acyclic
bool is_linear_forest(int n, std::span<const Edge> edges);

LinearForest forest_from_edges(int n, std::span<const Edge> edges);

}  // namespace tripack
