#include "tripack/mincostflow.hpp"

#include <limits>
#include <queue>

namespace tripack {

int MinCostFlow::add_arc(int from, int to, int cap, long long cost) {
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[from], cap, cost});
  head_[from] = id;
  arcs_.push_back({from, head_[to], 0, -cost});
  head_[to] = id + 1;
  return id;
}

std::pair<long long, long long> MinCostFlow::run(int s, int t, long long max_flow) {
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  long long flow = 0, cost = 0;
  std::vector<long long> pot(n_, 0), dist(n_);
  std::vector<int> prev_arc(n_);
  while (flow < max_flow) {
    // Dijkstra on reduced costs
    dist.assign(n_, kInf);
    dist[s] = 0;
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0, s);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (int a = head_[u]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap <= 0) continue;
        int v = arcs_[a].to;
        long long nd = d + arcs_[a].cost + pot[u] - pot[v];
        if (nd < dist[v]) {
          dist[v] = nd;
          prev_arc[v] = a;
          pq.emplace(nd, v);
        }
      }
    }
    if (dist[t] >= kInf) break;
    for (int v = 0; v < n_; ++v)
      if (dist[v] < kInf) pot[v] += dist[v];
    long long push = max_flow - flow;
    for (int v = t; v != s;) {
      int a = prev_arc[v];
      push = std::min<long long>(push, arcs_[a].cap);
      v = arcs_[a ^ 1].to;
    }
    for (int v = t; v != s;) {
      int a = prev_arc[v];
      arcs_[a].cap -= static_cast<int>(push);
      arcs_[a ^ 1].cap += static_cast<int>(push);
      cost += push * arcs_[a].cost;
      v = arcs_[a ^ 1].to;
    }
    flow += push;
  }
  return {flow, cost};
}

int MinCostFlow::flow_on(int arc_id) const { return arcs_[arc_id ^ 1].cap; }

}  // namespace tripack
