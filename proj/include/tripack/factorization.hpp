#pragma once

#include "tripack/digraph.hpp"
#include "tripack/subgraphs.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace tripack {

// residual edge set that supports repeated factor extraction
class ResidualGraph {
 public:
  explicit ResidualGraph(const Digraph& g);
  int vertex_count() const { return n_; }
  bool has_edge(int u, int v) const { return adj_.test(u, v); }
  void remove_edge(int u, int v);
  const std::vector<std::vector<int>>& out() const { return out_; }
  const std::vector<std::vector<int>>& in() const { return in_; }
  long long edge_count() const { return m_; }
  void remove_factor(const CycleFactor& f);
  std::vector<Edge> edges() const;

 private:
  int n_;
  BitMatrix adj_;
  std::vector<std::vector<int>> out_, in_;
  long long m_ = 0;
};

// spanning 1-regular subgraph via perfect matching in the split graph;
// regular input guarantees existence
CycleFactor extract_one_factor(const Digraph& g, uint64_t seed = 0);
std::optional<CycleFactor> extract_one_factor(const ResidualGraph& g, uint64_t seed);

// d pairwise edge-disjoint factors partitioning E(G); requires d-regular G
std::vector<CycleFactor> one_factorization(const Digraph& g, uint64_t seed = 0);

struct MergeTargets {
  int target_count = 0;   // 0: use the degree formula
  int attempts = 12;      // randomized restarts when targets are missed
};

struct MergeReport {
  int cycle_count = 0;
  int min_cycle_length = 0;
  int count_target = 0;       // nhat/(d+1), or nhat/(2d+1) for oriented input
  double length_target = 0;   // d/2
  bool count_ok = false;
  bool length_ok = false;
};

struct CycleCover {
  std::vector<std::vector<int>> cycles;
  MergeReport report;
};

// 1-factor extraction followed by greedy 2-edge splices between cycles.
// Targets are soft: the report carries the miss, never a silent failure.
CycleCover merge_into_few_cycles(const Digraph& g, MergeTargets t, uint64_t seed);

// splice-merge an existing factor inside an edge-availability oracle;
// returns vertex-disjoint cycles covering V (used by the decomposers)
std::vector<std::vector<int>> merge_factor(
    const CycleFactor& f, const std::function<bool(int, int)>& has_edge,
    int target_count);

}  // namespace tripack
