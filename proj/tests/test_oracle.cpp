#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tripack/generators.hpp"
#include "tripack/oracle.hpp"
#include "tripack/rng.hpp"

#include "test_helpers.hpp"

#include <numeric>

using namespace tripack;

namespace {
Digraph complete_digraph(int m) {
  std::vector<Edge> edges;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v) edges.emplace_back(u, v);
  return Digraph(m, GraphMode::General, std::move(edges));
}
}  // namespace

TEST_CASE("enumerate_hamilton_cycles") {
  CHECK(oracle::enumerate_hamilton_cycles(blowup_c3(1).graph()).size() == 1);
  CHECK(oracle::enumerate_hamilton_cycles(complete_digraph(4)).size() == 6);
  // blow-up with n = 2: cycles correspond to odd permutation triples
  CHECK(oracle::enumerate_hamilton_cycles(blowup_c3(2).graph()).size() == 4);

  Digraph big(16, GraphMode::General, {});
  CHECK_THROWS_AS(oracle::enumerate_hamilton_cycles(big), InvariantError);
}

TEST_CASE("cycle count invariant under relabeling") {
  Rng rng(3);
  auto g = tripack::testing::random_digraph(7, 0.5, rng);
  auto base = oracle::enumerate_hamilton_cycles(g).size();
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<int> perm(7);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    Digraph h(7, GraphMode::General, std::move(edges));
    CHECK(oracle::enumerate_hamilton_cycles(h).size() == base);
  }
}

TEST_CASE("max_hamilton_packing_exact") {
  CHECK(oracle::max_hamilton_packing_exact(blowup_c3(2).graph()).k == 1);
  CHECK(oracle::max_hamilton_packing_exact(blowup_c3(3).graph()).k == 3);

  auto tt = gen_t_triangle(2);
  auto pk = oracle::max_hamilton_packing_exact(tt.graph());
  CHECK(pk.k <= 1);
  for (const auto& c : pk.cycles)
    for (size_t i = 0; i < c.size(); ++i) {
      int u = c[i], v = c[(i + 1) % c.size()];
      CHECK(classify_edge(tt, u, v) == EdgeClass::Clockwise);
    }

  // cap short-circuits the search
  CHECK(oracle::max_hamilton_packing_exact(blowup_c3(3).graph(), 2).k == 2);
}

TEST_CASE("exact_nearest_gbeta") {
  auto [m, g] = gen_gbeta(3, 1.0 / 3, 4);
  CHECK(oracle::exact_nearest_gbeta(g) == 0);
  CHECK(oracle::exact_nearest_gbeta(blowup_c3(2)) == 0);
  CHECK(oracle::exact_nearest_gbeta(gen_t_triangle(2)) <= 6);
}

TEST_CASE("exact_expansion_check") {
  ExpansionParams p{0.1, 0.25};
  CHECK(oracle::exact_expansion_check(complete_digraph(8), p));
  Digraph empty(8, GraphMode::General, {});
  CHECK(!oracle::exact_expansion_check(empty, p));
}
