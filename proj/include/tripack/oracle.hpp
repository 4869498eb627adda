#pragma once

#include "tripack/digraph.hpp"
#include "tripack/expansion.hpp"

#include <vector>

namespace tripack::oracle {

// Brute-force ground truth at tiny scale. These share no search or encoding
// code with the production modules they referee: independent adjacency
// build, independent DFS, independent subset loops.

// all Hamilton cycles, each rotated to start at vertex 0; |V| <= 15
std::vector<std::vector<int>> enumerate_hamilton_cycles(const Digraph& g);

bool is_hamiltonian(const Digraph& g);  // |V| <= 15

struct PackingResult {
  int k = 0;
  std::vector<std::vector<int>> cycles;
};

// maximum number of pairwise edge-disjoint Hamilton cycles; |V| <= 12.
// cap > 0 stops the search as soon as `cap` disjoint cycles are found.
PackingResult max_hamilton_packing_exact(const Digraph& g, int cap = 0);

// exhaustive minimum edit distance to the structured family; n <= 3
long long exact_nearest_gbeta(const TripartiteTournament& t);

// naive unpruned subset loop; |V| <= 12
bool exact_expansion_check(const Digraph& g, const ExpansionParams& p);

}  // namespace tripack::oracle
