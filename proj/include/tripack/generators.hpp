#pragma once

#include "tripack/digraph.hpp"
#include "tripack/rng.hpp"

#include <array>
#include <optional>
#include <vector>

namespace tripack {

// Member description of the structured non-expander family: the class in
// role V1 splits into a forward part (clockwise-attached) and a backward
// part of size beta*n (counterclockwise-attached), and the V3->V2 bipartite
// graph is beta*n-regular.
//
// roles[i] is the vertex class (block index) playing V_{i+1}; an odd
// permutation flips chirality. Positions inside a class are vertex % n.
struct GBetaModel {
  int n = 0;
  std::array<int, 3> roles{0, 1, 2};
  int beta_n = 0;
  std::vector<uint8_t> backward;  // size n; backward[p]: position p of role-V1 class in <-V1
  BitMatrix ccw;                  // ccw.test(w,u): edge (V3 pos w) -> (V2 pos u) present

  double beta() const { return n ? static_cast<double>(beta_n) / n : 0.0; }
  // which role (0 = V1, 1 = V2, 2 = V3) the class of vertex v plays
  int role_of(int v) const {
    int c = v / n;
    for (int i = 0; i < 3; ++i)
      if (roles[i] == c) return i;
    return -1;
  }
  bool is_backward(int v) const;  // v must lie in the role-V1 class
  // O(1) membership test for the model tournament's edge set
  bool edge_in_model(int u, int v) const;
  TripartiteTournament realize() const;
  void validate() const;  // throws InvariantError on malformed model
};

TripartiteTournament blowup_c3(int n);

// beta*n must be integral, 0 <= beta <= 1/2. The counterclockwise graph is a
// seeded circulant randomized by 2-switches, so it is exactly beta*n-regular.
std::pair<GBetaModel, TripartiteTournament> gen_gbeta(int n, double beta,
                                                      uint64_t seed);

// blow-up with the triangle through position 0 of each class reversed
TripartiteTournament gen_t_triangle(int n);

// reversal chain over directed 3- and 4-cycles; preserves all degrees
TripartiteTournament gen_random_regular_tournament(int n, uint64_t seed,
                                                   long long steps);
inline long long default_mixing_steps(int n) { return 20LL * n * n; }

// the same chain started from an arbitrary tournament
TripartiteTournament randomize_by_cycle_reversals(const TripartiteTournament& t,
                                                  long long steps, uint64_t seed);

// balanced tripartite digraph, every semidegree exactly d (n <= d <= 2n)
std::pair<Digraph, Tripartition> gen_random_regular_tripartite_digraph(
    int n, int d, uint64_t seed);

// reverse k distinct uniformly chosen cross pairs
TripartiteTournament perturb(const TripartiteTournament& t, int k, uint64_t seed);
// deterministic variant, used by tests
TripartiteTournament perturb_pairs(const TripartiteTournament& t,
                                   std::span<const Edge> pairs);

// exactly d-regular bipartite graph on n+n vertices: circulant then switches
BitMatrix random_regular_bipartite(int n, int d, Rng& rng);

}  // namespace tripack
