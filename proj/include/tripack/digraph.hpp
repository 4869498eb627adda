#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tripack {

using Edge = std::pair<int, int>;

enum class GraphMode { General, Oriented };

// Thrown when a structural invariant of a graph type is violated. `invariant`
// names the violated rule so CLI consumers can report it verbatim.
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail),
        invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

// n x n bit matrix, row-major.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(size_t(n) * words_, 0) {}
  bool test(int u, int v) const {
    return (bits_[size_t(u) * words_ + v / 64] >> (v % 64)) & 1;
  }
  void set(int u, int v) { bits_[size_t(u) * words_ + v / 64] |= 1ULL << (v % 64); }
  void reset(int u, int v) { bits_[size_t(u) * words_ + v / 64] &= ~(1ULL << (v % 64)); }
  int n() const { return n_; }
  void unite(const BitMatrix& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  }
  long long popcount() const;

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<uint64_t> bits_;
};

// Immutable digraph. Dual representation: bit matrix for O(1) edge queries,
// out/in adjacency lists for iteration. Safe for concurrent reads.
class Digraph {
 public:
  Digraph(int vertex_count, GraphMode mode, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  GraphMode mode() const { return mode_; }
  bool has_edge(int u, int v) const { return adj_.test(u, v); }
  std::span<const int> out(int v) const { return out_[v]; }
  std::span<const int> in(int v) const { return in_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_[v].size()); }
  long long edge_count() const { return static_cast<long long>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }  // sorted

  // (out_degree, in_degree); throws on out-of-range vertex
  std::pair<int, int> degrees(int v) const;

  // d-regular for some d? returns d, or -1
  int regular_degree() const;

  int min_semidegree() const;  // delta^0
  int max_semidegree() const;  // Delta^0

  bool is_strongly_connected() const;

 private:
  int n_;
  GraphMode mode_;
  std::vector<Edge> edges_;
  BitMatrix adj_;
  std::vector<std::vector<int>> out_, in_;
};

// Mutable edge set used while generating graphs; frozen into a Digraph once
// construction ends.
class DigraphBuilder {
 public:
  DigraphBuilder(int vertex_count, GraphMode mode)
      : n_(vertex_count), mode_(mode), adj_(vertex_count),
        outdeg_(vertex_count, 0), indeg_(vertex_count, 0) {}

  int vertex_count() const { return n_; }
  bool has_edge(int u, int v) const { return adj_.test(u, v); }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void reverse_edge(int u, int v);
  int out_degree(int v) const { return outdeg_[v]; }
  int in_degree(int v) const { return indeg_[v]; }
  long long edge_count() const { return m_; }
  std::vector<Edge> edges() const;
  Digraph build() const { return Digraph(n_, mode_, edges()); }

 private:
  int n_;
  GraphMode mode_;
  BitMatrix adj_;
  std::vector<int> outdeg_, indeg_;
  long long m_ = 0;
};

// Balanced tripartition over dense vertex ids: class i occupies
// [i*n, (i+1)*n), so membership is arithmetic.
struct Tripartition {
  int n = 0;  // class size; vertex count is 3n

  int class_of(int v) const { return v / n; }
  int vertex_count() const { return 3 * n; }
  std::pair<int, int> block(int cls) const { return {cls * n, (cls + 1) * n}; }
  bool same_class(int u, int v) const { return u / n == v / n; }
};

enum class EdgeClass { Clockwise, Counterclockwise };

// Six-way edge census of a tripartite edge set plus the balance flags.
struct BipartiteCounts {
  // count[i][j] = number of edges from class i to class j (i != j)
  std::array<std::array<long long, 3>, 3> count{};

  long long total() const;
  std::array<long long, 3> clockwise() const {
    return {count[0][1], count[1][2], count[2][0]};
  }
  std::array<long long, 3> counterclockwise() const {
    return {count[2][1], count[1][0], count[0][2]};
  }
  bool clockwise_balanced() const;
  bool counterclockwise_balanced() const;
  bool bidirectionally_balanced() const {
    return clockwise_balanced() && counterclockwise_balanced();
  }
};

// Orientation of the complete tripartite graph K3(n). The regular variant
// additionally has every in/out degree equal to n.
class TripartiteTournament {
 public:
  TripartiteTournament(Digraph g, Tripartition parts);

  const Digraph& graph() const { return g_; }
  const Tripartition& parts() const { return parts_; }
  int n() const { return parts_.n; }
  bool is_regular() const;

 private:
  Digraph g_;
  Tripartition parts_;
};

EdgeClass classify_edge(const TripartiteTournament& t, int u, int v);

BipartiteCounts bipartite_counts(const Tripartition& parts,
                                 std::span<const Edge> edges);
BipartiteCounts bipartite_counts(const TripartiteTournament& t,
                                 std::span<const Edge> edges);
// census of the whole tournament
BipartiteCounts bipartite_counts(const TripartiteTournament& t);

// |E(G) symmetric-difference E(H)|; requires same vertex set and partition
long long edit_distance(const TripartiteTournament& g,
                        const TripartiteTournament& h);

// content hash of (n, mode, edge set), for certificates
uint64_t graph_content_hash(const Digraph& g);

}  // namespace tripack
