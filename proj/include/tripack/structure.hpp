#pragma once

#include "tripack/digraph.hpp"
#include "tripack/expansion.hpp"
#include "tripack/generators.hpp"

#include <vector>

namespace tripack {

// Edge modifications materialized. For tournaments every modification is a
// reversal and shows up as one removal plus one addition; modifications()
// counts such a pair as a single edit, matching how the structural bounds
// count "edge modifications".
struct EditScript {
  std::vector<Edge> additions;
  std::vector<Edge> removals;

  int entry_count() const {
    return static_cast<int>(additions.size() + removals.size());
  }
  int modifications() const;
};

// Undirected bipartite graph on A u B with |A| = |B| = m.
struct UndirectedBipartite {
  int m = 0;
  BitMatrix adj;  // adj(a,b)

  explicit UndirectedBipartite(int m_) : m(m_), adj(m_) {}
  UndirectedBipartite() = default;
  int deg_a(int a) const;
  int deg_b(int b) const;
};

// Two-phase regularizer: pad/trim to d*m edges, then two-edge rebalancing
// swaps until every degree equals d. The returned script has at most 9t
// entries for t = max over the two sides of the total degree deviation.
EditScript regularize_bipartite(const UndirectedBipartite& h, int d);

struct ClosenessReport {
  GBetaModel model;
  long long distance = 0;  // exact |E(G) triangle E(model)|
  double epsilon = 0;      // distance / (3n)^2
};

// Best structured approximation found over all six class-role assignments.
// The V1 split is by per-vertex majority; the V3->V2 graph is the exact
// max-agreement beta*n-regular bipartite graph (min-cost flow). The reported
// distance is exact for the returned model.
ClosenessReport nearest_gbeta(const TripartiteTournament& t);

// Partition4 with the class each block should occupy: class_a splits into
// V11 u V22, class_b maps to V12, class_c to V21.
struct Partition4Roles {
  Partition4 parts;
  int class_a = 0, class_b = 1, class_c = 2;
};

struct GBetaEditResult {
  GBetaModel model;
  EditScript script;
  double eps1 = 0;  // measured bad-direction edge mass / n^2
  double eps2 = 0;  // measured class-mismatch mass / n
  double bound = 0;  // (10*eps1 + 90*eps2) * n^2
  bool within_bound = false;
};

// Executes the editing construction: relocate mismatched vertices, fix edge
// directions between V1 and V2 u V3, regularize the V3->V2 graph.
GBetaEditResult to_gbeta_member(const TripartiteTournament& t,
                                const Partition4Roles& p);

struct ExceptionalSet {
  double gamma = 0;
  std::vector<int> vertices;
  // certificate check |U| * gamma * 3n / 2 <= e(G \ G')
  long long offmodel_edges = 0;
  bool mass_bound_ok = false;
};

// U^gamma: vertices incident with >= gamma*3n edges outside the model
ExceptionalSet exceptional_vertices(const TripartiteTournament& g,
                                    const GBetaModel& model, double gamma);

}  // namespace tripack
