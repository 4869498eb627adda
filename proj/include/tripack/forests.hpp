#pragma once

#include "tripack/digraph.hpp"
#include "tripack/generators.hpp"
#include "tripack/structure.hpp"
#include "tripack/subgraphs.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tripack {

// One audited inequality. Hard entries are structural postconditions that
// must hold; soft entries are magnitude targets reported with their slack.
struct AuditEntry {
  std::string name;
  double measured = 0;
  double bound = 0;
  bool upper = true;  // measured <= bound, else measured >= bound
  bool hard = false;
  bool pass = false;
};

struct AuditReport {
  std::vector<AuditEntry> entries;

  void add(std::string name, double measured, double bound, bool hard,
           bool upper = true);
  bool hard_ok() const;
  bool all_ok() const;
  const AuditEntry* find(const std::string& name) const;
};

// Soft-audit tolerances scale the asymptotic expressions; hard structural
// postconditions are never relaxed.
struct CoverParams {
  double epsilon = 0.01;  // measured closeness
  double gamma = 0.1;     // exceptional-vertex threshold
  int ell = 0;            // forests requested
  double tol = 3.0;       // soft-audit multiplier
  uint64_t seed = 1;
  int merge_attempts = 8;
};

struct ForestFamily {
  std::vector<LinearForest> forests;
  AuditReport audit;
  int requested = 0;
  int discarded_factors = 0;
  bool ok = false;  // requested count met and hard audits clean
  std::string error;
};

// Exceptional covers for the beta >= threshold regime: cycle factors are
// pruned down to small forests that keep every exceptional vertex internal,
// start in V3 and end in V2, and satisfy the two half-balance equalities.
ForestFamily cover_exceptional_gbeta(const TripartiteTournament& g,
                                     const GBetaModel& model,
                                     const CoverParams& p);

// beta = 0 regime: only counterclockwise edges and edges guarding the
// exceptional vertices survive; forests are counterclockwise-balanced.
ForestFamily cover_exceptional_c3(const TripartiteTournament& g,
                                  const GBetaModel& model,
                                  const CoverParams& p);

struct CleanResult {
  ForestFamily family;
  std::vector<int> u_star;
  bool ok = false;
  std::string error;
};

// Extends each forest with <= 6-edge bidirectionally balanced paths so that
// every busy vertex reaches full degree in every forest.
CleanResult clean_forests(const TripartiteTournament& g, const GBetaModel& model,
                          const ForestFamily& family, const CoverParams& p);

struct HostGraph {
  std::vector<int> w_verts;                 // the dense slice
  std::array<std::vector<int>, 3> w_class;  // per tournament class
  EdgeBitset edges;                         // Q u D u E
  int r_measured = 0;                       // common degree target on X
  AuditReport audit;
};

struct HostPartition {
  std::vector<HostGraph> hosts;  // K^3 of them
  AuditReport audit;
  bool ok = false;
};

// Randomized decomposition into K^3 edge-disjoint spanning subgraphs, each
// dense on a small W and near-regular on the complementary X. Every edge of
// G lands in exactly one host.
HostPartition partition_host(const Digraph& g, const Tripartition& parts,
                             int K, double eta, double tol, uint64_t seed);

// Repeated near-1-factor extraction: maximum degree-<=1 subgraph by
// matching, one edge deleted per cycle.
ForestFamily path_cover(const Digraph& h, std::span<const int> verts, int r,
                        int count, double tol, uint64_t seed);

struct BalancedCoverParams {
  double epsilon = 0.05;  // closeness scale used in the audit formulas
  double gamma = 0.1;     // host regularity scale (r/n)
  int ell = 0;
  double tol = 3.0;
  uint64_t seed = 1;
};

// Edge-disjoint exactly bidirectionally balanced near-spanning forests in
// h[verts], avoiding per-forest forbidden sets and the reserved edge set R.
ForestFamily balanced_covers(const Digraph& h, std::span<const int> verts,
                             const Tripartition& parts, const GBetaModel& model,
                             const BalancedCoverParams& p,
                             std::span<const std::vector<int>> forbidden,
                             const EdgeBitset& reserved,
                             const std::vector<int>* u_star = nullptr);

struct EndpointProfile {
  std::array<int, 3> plus{};   // |V_i with no out-edge|
  std::array<int, 3> minus{};  // |V_i with no in-edge|
  bool six_equal = false;
  // with a model: the V1-split profile
  int fwd_plus = 0, fwd_minus = 0, bwd_plus = 0, bwd_minus = 0;
  bool v1_split_equal = false;
};

EndpointProfile endpoint_profile(const TripartiteTournament& g,
                                 const LinearForest& f,
                                 const GBetaModel* model = nullptr);

}  // namespace tripack
