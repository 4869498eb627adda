#include "tripack/subgraphs.hpp"

#include <algorithm>

namespace tripack {

void UnitCapGraph::add_edge(int u, int v) {
  if (u == v) throw InvariantError("no_loops", "loop");
  if (succ_[u] != -1) throw InvariantError("out_degree_le_1", "out-slot occupied");
  if (pred_[v] != -1) throw InvariantError("in_degree_le_1", "in-slot occupied");
  succ_[u] = v;
  pred_[v] = u;
  ++m_;
}

void UnitCapGraph::remove_edge(int u, int v) {
  if (succ_[u] != v) throw InvariantError("edge_present", "edge absent");
  succ_[u] = -1;
  pred_[v] = -1;
  --m_;
}

std::vector<Edge> UnitCapGraph::edges() const {
  std::vector<Edge> e;
  e.reserve(m_);
  for (int v = 0; v < size(); ++v)
    if (succ_[v] != -1) e.emplace_back(v, succ_[v]);
  return e;
}

bool UnitCapGraph::creates_cycle(int u, int v) const {
  // follow successors from v; degree <= 1 makes this a simple walk
  int w = v;
  while (w != -1) {
    if (w == u) return true;
    w = succ_[w];
  }
  return false;
}

void LinearForest::add_edge(int u, int v) {
  if (g_.creates_cycle(u, v)) throw InvariantError("acyclic", "edge closes a cycle");
  g_.add_edge(u, v);
}

std::vector<int> LinearForest::startpoints() const {
  std::vector<int> s;
  for (int v = 0; v < size(); ++v)
    if (g_.succ(v) != -1 && g_.pred(v) == -1) s.push_back(v);
  return s;
}

std::vector<int> LinearForest::endpoints() const {
  std::vector<int> s;
  for (int v = 0; v < size(); ++v)
    if (g_.pred(v) != -1 && g_.succ(v) == -1) s.push_back(v);
  return s;
}

std::vector<std::vector<int>> LinearForest::paths() const {
  std::vector<std::vector<int>> out;
  for (int s : startpoints()) {
    std::vector<int> p{s};
    int w = g_.succ(s);
    while (w != -1) {
      p.push_back(w);
      w = g_.succ(w);
    }
    out.push_back(std::move(p));
  }
  return out;
}

CycleFactor::CycleFactor(std::vector<int> succ) : succ_(std::move(succ)) {
  int n = static_cast<int>(succ_.size());
  std::vector<int> indeg(n, 0);
  for (int v = 0; v < n; ++v) {
    if (succ_[v] < 0 || succ_[v] >= n || succ_[v] == v)
      throw InvariantError("one_regular", "successor out of range or loop");
    ++indeg[succ_[v]];
  }
  for (int v = 0; v < n; ++v)
    if (indeg[v] != 1) throw InvariantError("one_regular", "in-degree != 1");
}

std::vector<Edge> CycleFactor::edges() const {
  std::vector<Edge> e;
  e.reserve(succ_.size());
  for (int v = 0; v < size(); ++v) e.emplace_back(v, succ_[v]);
  return e;
}

std::vector<std::vector<int>> CycleFactor::cycles() const {
  std::vector<char> seen(size(), 0);
  std::vector<std::vector<int>> out;
  for (int v = 0; v < size(); ++v) {
    if (seen[v]) continue;
    std::vector<int> c;
    int w = v;
    while (!seen[w]) {
      seen[w] = 1;
      c.push_back(w);
      w = succ_[w];
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool is_linear_forest(int n, std::span<const Edge> edges) {
  std::vector<int> succ(n, -1), pred(n, -1);
  for (auto [u, v] : edges) {
    if (u == v || succ[u] != -1 || pred[v] != -1) return false;
    succ[u] = v;
    pred[v] = u;
  }
  // acyclicity: every component reached from a startpoint; count edges walked
  int walked = 0;
  for (int v = 0; v < n; ++v) {
    if (pred[v] != -1 || succ[v] == -1) continue;
    int w = succ[v];
    while (w != -1) {
      ++walked;
      w = succ[w];
    }
  }
  return walked == static_cast<int>(edges.size());
}

LinearForest forest_from_edges(int n, std::span<const Edge> edges) {
  LinearForest f(n);
  for (auto [u, v] : edges) f.add_edge(u, v);
  return f;
}

}  // namespace tripack
