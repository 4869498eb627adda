#pragma once

#include "tripack/digraph.hpp"
#include "tripack/matching.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tripack {

enum class HamStatus {
  Found,
  PreconditionViolated,  // semidegree audit failed and override unset
  NotHamiltonian,        // proven absent (exhaustive search or disconnected)
  BudgetExhausted,       // heuristic gave up; existence undecided
};

struct HamOptions {
  bool override_precondition = false;
  long long budget = 1'000'000;  // expansion steps for the backtracking search
  uint64_t seed = 1;
  int exact_threshold = 14;  // exhaustive DP at or below this order
};

struct HamResult {
  HamStatus status = HamStatus::BudgetExhausted;
  std::vector<int> cycle;    // vertex sequence when Found
  bool exhaustive = false;   // a negative answer is a proof
  long long expansions = 0;
};

// Hamilton cycle finder for the dense regime (min semidegree >= ceil(n/2)).
// Exhaustive subset DP at small orders; seeded backtracking with a
// fewest-choices successor order beyond.
HamResult ghouila_houri_hamilton(const Digraph& g, const HamOptions& opt = {});

// independent validity check used before any cycle is surfaced
bool verify_hamilton_cycle(const Digraph& g, const std::vector<int>& cycle,
                           std::string* why = nullptr);

struct PerfectMatchingResult {
  Matching matching;
  bool perfect = false;
  // when the Hall-condition audit (min degree >= n/2) holds, perfection
  // is asserted rather than merely hoped for
  bool hall_audit = false;
  std::vector<int> violator;  // nonempty iff not perfect
};

PerfectMatchingResult bipartite_perfect_matching(const BipartiteGraph& g);

// Closing host: digraph plus a block label per vertex. Labels for the
// four-block closer: 0 = forward-V1, 1 = backward-V1, 2 = V2, 3 = V3.
// For the tripartite closer: 0 = V1, 1 = V2, 2 = V3.
struct CloseResult {
  bool ok = false;
  std::vector<int> cycle;
  std::string fail_stage;  // which internal step failed
  bool audits_ok = true;   // degree preconditions at the given eps
  std::vector<std::string> audit_failures;
};

// Hamilton cycle through every vertex containing all prescribed matching
// pairs (V3 -> V2). Pairs may be virtual: the caller splices real paths in
// their place. Proof-shaped: two contractions, each closed by the dense
// finder, with the de-contracted structure re-verified at every step.
CloseResult close_gbeta(const Digraph& g, const std::vector<int>& part4,
                        const std::vector<Edge>& m, double eps,
                        const HamOptions& ham = {});

// |M| must equal |V2| - |V1| exactly; single contraction variant.
CloseResult close_c3(const Digraph& g, const std::vector<int>& part3,
                     const std::vector<Edge>& m, double eps,
                     const HamOptions& ham = {});

}  // namespace tripack
