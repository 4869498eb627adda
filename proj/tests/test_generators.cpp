#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tripack/digraph.hpp"
#include "tripack/generators.hpp"
#include "tripack/rng.hpp"

using namespace tripack;

TEST_CASE("blowup_c3") {
  auto t1 = blowup_c3(1);
  CHECK(t1.graph().edge_count() == 3);
  CHECK(t1.graph().has_edge(0, 1));
  CHECK(t1.graph().has_edge(1, 2));
  CHECK(t1.graph().has_edge(2, 0));

  auto t2 = blowup_c3(2);
  CHECK(t2.graph().edge_count() == 12);
  CHECK(t2.is_regular());

  auto [m0, g0] = gen_gbeta(3, 0.0, 123);
  CHECK(edit_distance(blowup_c3(3), g0) == 0);
}

TEST_CASE("gen_gbeta") {
  auto [m, g] = gen_gbeta(4, 0.0, 5);
  CHECK(edit_distance(g, blowup_c3(4)) == 0);

  auto [m2, g2] = gen_gbeta(4, 0.5, 17);
  CHECK(m2.beta_n == 2);
  for (int w = 0; w < 4; ++w) {
    int row = 0;
    for (int u = 0; u < 4; ++u) row += m2.ccw.test(w, u);
    CHECK(row == 2);
  }
  CHECK(g2.is_regular());

  auto [m3, g3] = gen_gbeta(6, 1.0 / 3, 29);
  for (int v = 0; v < 18; ++v) CHECK(g3.graph().degrees(v) == std::pair{6, 6});
  m3.validate();

  CHECK_THROWS_AS(gen_gbeta(4, 0.3, 1), InvariantError);   // beta*n not integral
  CHECK_THROWS_AS(gen_gbeta(4, 0.75, 1), InvariantError);  // beta > 1/2
}

TEST_CASE("gen_t_triangle") {
  auto t1 = gen_t_triangle(1);
  CHECK(t1.graph().has_edge(1, 0));
  CHECK(t1.graph().has_edge(2, 1));
  CHECK(t1.graph().has_edge(0, 2));

  auto t2 = gen_t_triangle(2);
  std::vector<Edge> ccw;
  for (auto [u, v] : t2.graph().edges())
    if (classify_edge(t2, u, v) == EdgeClass::Counterclockwise) ccw.emplace_back(u, v);
  REQUIRE(ccw.size() == 3);
  // the three counterclockwise edges close a directed triangle
  CHECK(t2.graph().has_edge(2, 0));
  CHECK(t2.graph().has_edge(0, 4));
  CHECK(t2.graph().has_edge(4, 2));

  auto t3 = gen_t_triangle(3);
  CHECK(t3.is_regular());
  CHECK(edit_distance(t3, blowup_c3(3)) == 6);
}

TEST_CASE("gen_random_regular_tournament") {
  CHECK(edit_distance(gen_random_regular_tournament(4, 1, 0), blowup_c3(4)) == 0);

  auto t = gen_random_regular_tournament(3, 42, 500);
  CHECK(t.is_regular());
  CHECK(t.graph().edge_count() == 27);

  // the chain really moves: reversal fraction strictly inside (0,1)
  auto t2 = gen_random_regular_tournament(2, 7, 10000);
  long long reversed = edit_distance(t2, blowup_c3(2)) / 2;
  CHECK(reversed > 0);
  CHECK(reversed < 12);

  // degree preservation after every step is implied by regularity here
  for (int s = 1; s <= 5; ++s) CHECK(gen_random_regular_tournament(3, s, 100).is_regular());
}

TEST_CASE("gen_random_regular_tripartite_digraph") {
  auto [g, parts] = gen_random_regular_tripartite_digraph(3, 6, 9);
  CHECK(g.edge_count() == 6LL * 9);  // complete tripartite digraph
  for (int v = 0; v < 9; ++v) CHECK(g.degrees(v) == std::pair{6, 6});

  auto [g2, parts2] = gen_random_regular_tripartite_digraph(4, 5, 31);
  for (int v = 0; v < 12; ++v) CHECK(g2.degrees(v) == std::pair{5, 5});
  for (auto [u, v] : g2.edges()) CHECK(!parts2.same_class(u, v));

  auto [g3, parts3] = gen_random_regular_tripartite_digraph(2, 2, 8);
  for (int v = 0; v < 6; ++v) CHECK(g3.degrees(v) == std::pair{2, 2});

  CHECK_THROWS_AS(gen_random_regular_tripartite_digraph(4, 3, 1), InvariantError);
  CHECK_THROWS_AS(gen_random_regular_tripartite_digraph(4, 9, 1), InvariantError);
}

TEST_CASE("perturb") {
  auto c3 = blowup_c3(4);
  CHECK(edit_distance(perturb(c3, 0, 3), c3) == 0);

  std::vector<Edge> triangle{{0, 4}, {4, 8}, {8, 0}};
  CHECK(edit_distance(perturb_pairs(c3, triangle), gen_t_triangle(4)) == 0);

  auto t = gen_random_regular_tournament(3, 3, 100);
  CHECK(edit_distance(t, perturb(t, 5, 77)) == 10);
}

TEST_CASE("seed determinism") {
  auto a = gen_random_regular_tournament(4, 1234, 300);
  auto b = gen_random_regular_tournament(4, 1234, 300);
  CHECK(edit_distance(a, b) == 0);

  auto [ga, pa] = gen_random_regular_tripartite_digraph(4, 6, 55);
  auto [gb, pb] = gen_random_regular_tripartite_digraph(4, 6, 55);
  CHECK(ga.edges() == gb.edges());

  auto [ma, ta] = gen_gbeta(6, 0.5, 99);
  auto [mb, tb] = gen_gbeta(6, 0.5, 99);
  CHECK(edit_distance(ta, tb) == 0);
}

TEST_CASE("random regular bipartite is exactly regular") {
  Rng rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 3 + rep % 8, d = rep % (n + 1);
    auto m = random_regular_bipartite(n, d, rng);
    for (int i = 0; i < n; ++i) {
      int row = 0, col = 0;
      for (int j = 0; j < n; ++j) {
        row += m.test(i, j);
        col += m.test(j, i);
      }
      CHECK(row == d);
      CHECK(col == d);
    }
  }
}
