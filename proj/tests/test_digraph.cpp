#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tripack/digraph.hpp"
#include "tripack/generators.hpp"
#include "tripack/json_io.hpp"
#include "tripack/rng.hpp"
#include "tripack/subgraphs.hpp"

#include <sstream>

using namespace tripack;

TEST_CASE("degrees") {
  auto t = blowup_c3(2);
  for (int v = 0; v < 6; ++v) CHECK(t.graph().degrees(v) == std::pair{2, 2});

  Digraph single(3, GraphMode::Oriented, {{0, 1}});
  CHECK(single.degrees(0) == std::pair{1, 0});
  CHECK(single.degrees(1) == std::pair{0, 1});
  CHECK_THROWS_AS(single.degrees(7), InvariantError);

  auto tt = gen_t_triangle(3);
  CHECK(tt.graph().degrees(0) == std::pair{3, 3});
  CHECK(tt.is_regular());
}

TEST_CASE("classify_edge") {
  auto c3 = blowup_c3(3);
  CHECK(classify_edge(c3, 0, 3) == EdgeClass::Clockwise);

  auto tt = gen_t_triangle(2);
  // b1 -> a1 is the reversed V2 -> V1 edge
  CHECK(classify_edge(tt, 2, 0) == EdgeClass::Counterclockwise);
  CHECK_THROWS_AS(classify_edge(tt, 0, 2), InvariantError);

  auto [model, g] = gen_gbeta(4, 0.5, 7);
  bool found_ccw = false;
  for (int w = 0; w < 4; ++w)
    for (int u = 0; u < 4; ++u)
      if (model.ccw.test(w, u)) {
        CHECK(classify_edge(g, 2 * 4 + w, 4 + u) == EdgeClass::Counterclockwise);
        found_ccw = true;
      }
  CHECK(found_ccw);
}

TEST_CASE("bipartite_counts") {
  auto c3 = blowup_c3(3);
  // one clockwise Hamilton cycle of the blow-up
  std::vector<Edge> cyc;
  std::vector<int> seq{0, 3, 6, 1, 4, 7, 2, 5, 8};
  for (size_t i = 0; i < seq.size(); ++i)
    cyc.emplace_back(seq[i], seq[(i + 1) % seq.size()]);
  auto counts = bipartite_counts(c3, cyc);
  CHECK(counts.clockwise() == std::array<long long, 3>{3, 3, 3});
  CHECK(counts.counterclockwise() == std::array<long long, 3>{0, 0, 0});
  CHECK(counts.bidirectionally_balanced());

  auto empty = bipartite_counts(c3, std::vector<Edge>{});
  CHECK(empty.total() == 0);
  CHECK(empty.bidirectionally_balanced());
}

TEST_CASE("edge classification partitions the tournament") {
  auto t = gen_random_regular_tournament(3, 5, 300);
  long long cw = 0, ccw = 0;
  for (auto [u, v] : t.graph().edges())
    (classify_edge(t, u, v) == EdgeClass::Clockwise ? cw : ccw)++;
  CHECK(cw + ccw == 27);
}

TEST_CASE("edit_distance") {
  auto c3 = blowup_c3(3);
  CHECK(edit_distance(c3, c3) == 0);
  CHECK(edit_distance(c3, gen_t_triangle(3)) == 6);

  auto t = gen_random_regular_tournament(3, 11, 200);
  auto p = perturb(t, 4, 99);
  CHECK(edit_distance(t, p) == 8);

  // metric sanity on random triples
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    auto a = perturb(c3, rng.uniform_int(0, 9), rng.next_u64());
    auto b = perturb(c3, rng.uniform_int(0, 9), rng.next_u64());
    auto c = perturb(c3, rng.uniform_int(0, 9), rng.next_u64());
    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
  }
}

TEST_CASE("factor of a tournament is bidirectionally balanced") {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + rep % 4;
    auto t = gen_random_regular_tournament(n, rng.next_u64(), 40 * n * n);
    // any cycle factor: one exists because the tournament is regular
    std::vector<int> succ(3 * n, -1), taken(3 * n, 0);
    // greedy matching fallback is fine here: use the generator's structure
    // via a simple augmenting search over the split graph
    // (kept independent of the production matching code on purpose)
    std::vector<std::vector<int>> adj(3 * n);
    for (auto [u, v] : t.graph().edges()) adj[u].push_back(v);
    std::vector<int> match_r(3 * n, -1), match_l(3 * n, -1);
    std::vector<char> vis;
    auto aug = [&](auto&& self, int u) -> bool {
      for (int v : adj[u]) {
        if (vis[v]) continue;
        vis[v] = 1;
        if (match_r[v] == -1 || self(self, match_r[v])) {
          match_r[v] = u;
          match_l[u] = v;
          return true;
        }
      }
      return false;
    };
    int sz = 0;
    for (int u = 0; u < 3 * n; ++u) {
      vis.assign(3 * n, 0);
      if (aug(aug, u)) ++sz;
    }
    REQUIRE(sz == 3 * n);
    std::vector<Edge> factor;
    for (int u = 0; u < 3 * n; ++u) factor.emplace_back(u, match_l[u]);
    CHECK(bipartite_counts(t, factor).bidirectionally_balanced());
  }
}

TEST_CASE("linear forest closure under edge deletion") {
  LinearForest f(8);
  f.add_edge(0, 1);
  f.add_edge(1, 2);
  f.add_edge(4, 5);
  auto edges = f.edges();
  for (auto [u, v] : edges) {
    LinearForest g = f;
    g.remove_edge(u, v);
    CHECK(is_linear_forest(8, g.edges()));
  }
  // adding a cycle-closing edge is rejected
  CHECK(!f.can_add(2, 0));
  CHECK_THROWS_AS(f.add_edge(2, 0), InvariantError);
}

TEST_CASE("tournament invariants enforced") {
  // intra-class edge
  std::vector<Edge> bad{{0, 1}};
  CHECK_THROWS_AS(TripartiteTournament(Digraph(6, GraphMode::Oriented, bad),
                                       Tripartition{2}),
                  InvariantError);
  // incomplete orientation
  CHECK_THROWS_AS(TripartiteTournament(Digraph(6, GraphMode::Oriented, {{0, 2}}),
                                       Tripartition{2}),
                  InvariantError);
}

TEST_CASE("json round trip and loader validation") {
  auto t = gen_t_triangle(2);
  auto j = tournament_to_json(t);
  std::stringstream ss;
  ss << j;
  auto t2 = read_tournament(ss);
  CHECK(edit_distance(t, t2) == 0);
  CHECK(graph_content_hash(t.graph()) == graph_content_hash(t2.graph()));

  auto reject = [](const char* text, const char* invariant) {
    std::stringstream in(text);
    try {
      read_graph(in);
      FAIL_CHECK("expected rejection for ", invariant);
    } catch (const InvariantError& e) {
      CHECK(e.invariant() == invariant);
    }
  };
  reject(R"({"n":2,"mode":"oriented","edges":[[0,0]]})", "no_loops");
  reject(R"({"n":2,"mode":"oriented","edges":[[0,2],[2,0]]})", "oriented");
  reject(R"({"n":2,"mode":"general","edges":[[0,2],[0,2]]})", "no_duplicate_edges");
  reject(R"({"n":2,"mode":"general","edges":[[0,99]]})", "vertex_range");
  reject(R"({"n":2,"mode":"sideways","edges":[]})", "format");
}
