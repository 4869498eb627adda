#pragma once

#include <vector>

namespace tripack {

// Successive-shortest-path min-cost max-flow with potentials. Costs must be
// non-negative. Small graphs only (used for exact degree-constrained
// subgraph selection).
class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : n_(n), head_(n, -1) {}

  // returns arc id of forward arc
  int add_arc(int from, int to, int cap, long long cost);
  // (flow, cost) after pushing up to max_flow units from s to t
  std::pair<long long, long long> run(int s, int t, long long max_flow);

  int flow_on(int arc_id) const;  // flow through a forward arc

 private:
  struct Arc {
    int to, next, cap;
    long long cost;
  };
  int n_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

}  // namespace tripack
