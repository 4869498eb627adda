#pragma once

#include "tripack/digraph.hpp"
#include "tripack/forests.hpp"
#include "tripack/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tripack {

struct PipelineParams {
  int K = 2;
  double eta = 0.3;
  double gamma = -1;           // < 0: derived from the measured closeness
  double beta_threshold = -1;  // < 0: 8 * eps^{1/4}
  double tol = 4.0;            // soft-audit multiplier
  int forest_retries = 24;     // per-forest rebuild attempts
  int extraction_retries = 40; // per-level factor retries (full decomposition)
  int global_restarts = 30;    // whole-run restarts for the extractor
  long long gh_budget = 300000;
};

struct PipelineTrace {
  struct Event {
    std::string stage;
    std::string detail;
    bool ok = true;
  };
  std::vector<Event> events;
  void log(const std::string& stage, const std::string& detail, bool ok = true) {
    events.push_back({stage, detail, ok});
  }
};

struct PackingCertificate {
  uint64_t host_hash = 0;
  std::vector<std::vector<int>> cycles;
  int claimed_count = 0;
  bool verified = false;
  bool full_decomposition = false;
  bool exact = false;  // produced by the exhaustive desk-scale referee
  std::string note;
};

struct PackingVerifyReport {
  bool ok = false;
  std::string violation;
  int bad_cycle = -1;
  long long covered_edges = 0;
  long long leftover_edges = 0;
  std::vector<BipartiteCounts> balance;  // per cycle, tournament hosts only
};

PackingVerifyReport verify_packing(const Digraph& g, const Tripartition* parts,
                                   const PackingCertificate& cert);

// Full Hamilton decomposition of a dense regular tripartite digraph by
// repeated extraction: each level takes one factor and splices it into a
// single Hamilton cycle; the remainder stays regular.
PackingCertificate decompose_directed(const Digraph& g, const Tripartition& parts,
                                      double eps, uint64_t seed,
                                      PipelineParams params = {},
                                      PipelineTrace* trace = nullptr);

// Structured route for tournaments close to the non-expander family:
// exceptional covers -> cleaner -> host partition -> balanced covers ->
// per-forest extension -> contraction closing.
PackingCertificate pipeline_gbeta(const TripartiteTournament& g,
                                  const ClosenessReport& report, double delta,
                                  PipelineParams params, uint64_t seed,
                                  PipelineTrace* trace = nullptr);

// Dispatcher: exhaustive referee at tiny scale, full extraction when the
// expansion check passes, the structured pipeline otherwise; keeps the
// better certificate when both branches run.
PackingCertificate approx_decompose_oriented(const TripartiteTournament& g,
                                             double delta, PipelineParams params,
                                             uint64_t seed,
                                             PipelineTrace* trace = nullptr);

}  // namespace tripack
