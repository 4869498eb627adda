#pragma once

#include <vector>

namespace tripack {

// Bipartite graph for matching; adj[l] lists right-side neighbours of l.
struct BipartiteGraph {
  int nl = 0, nr = 0;
  std::vector<std::vector<int>> adj;
};

struct Matching {
  std::vector<int> match_l, match_r;  // -1 = unmatched
  int size = 0;
  bool perfect(int n) const { return size == n; }
};

// Hopcroft-Karp. Deterministic for a fixed adjacency order; callers inject
// randomness by shuffling adjacency lists.
Matching hopcroft_karp(const BipartiteGraph& g);

// A set S of left vertices with |N(S)| < |S|, or empty when the matching
// saturates the left side. Built from alternating reachability (Koenig).
std::vector<int> hall_violator(const BipartiteGraph& g, const Matching& m);

}  // namespace tripack
