#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tripack/hamiltonicity.hpp"
#include "tripack/oracle.hpp"
#include "tripack/rng.hpp"

#include "test_helpers.hpp"

using namespace tripack;
using tripack::testing::make_close_c3_instance;
using tripack::testing::make_close_gbeta_instance;
using tripack::testing::random_dense_digraph;
using tripack::testing::random_digraph;

namespace {
Digraph complete_digraph(int m) {
  std::vector<Edge> edges;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v) edges.emplace_back(u, v);
  return Digraph(m, GraphMode::General, std::move(edges));
}
}  // namespace

TEST_CASE("finder on the dense regime") {
  auto r = ghouila_houri_hamilton(complete_digraph(4));
  REQUIRE(r.status == HamStatus::Found);
  CHECK(r.cycle.size() == 4);

  // two disjoint complete digraphs: proven non-Hamiltonian under override
  std::vector<Edge> edges;
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v)
      if (u != v) {
        edges.emplace_back(u, v);
        edges.emplace_back(u + 4, v + 4);
      }
  Digraph split(8, GraphMode::General, std::move(edges));
  HamOptions opt;
  opt.override_precondition = true;
  auto r2 = ghouila_houri_hamilton(split, opt);
  CHECK(r2.status == HamStatus::NotHamiltonian);
  CHECK(r2.exhaustive);

  // precondition gate without override
  CHECK(ghouila_houri_hamilton(split).status == HamStatus::PreconditionViolated);
}

TEST_CASE("agreement with the oracle across the degree range") {
  Rng rng(17);
  HamOptions opt;
  opt.override_precondition = true;
  for (int rep = 0; rep < 400; ++rep) {
    int m = 4 + rep % 5;
    auto g = random_digraph(m, 0.15 + 0.08 * (rep % 10), rng);
    auto mine = ghouila_houri_hamilton(g, opt);
    bool exists = oracle::is_hamiltonian(g);
    REQUIRE(mine.exhaustive);
    CHECK((mine.status == HamStatus::Found) == exists);
    if (mine.status == HamStatus::Found)
      CHECK(verify_hamilton_cycle(g, mine.cycle));
  }
}

TEST_CASE("dense instances succeed within budget") {
  Rng rng(4);
  for (int m : {16, 24, 32, 48}) {
    for (int rep = 0; rep < 5; ++rep) {
      auto g = random_dense_digraph(m, (m + 1) / 2, rng);
      HamOptions opt;
      opt.seed = rng.next_u64();
      auto r = ghouila_houri_hamilton(g, opt);
      REQUIRE(r.status == HamStatus::Found);
      CHECK(r.expansions <= opt.budget);
    }
  }
}

TEST_CASE("bipartite perfect matching") {
  BipartiteGraph kmm;
  kmm.nl = kmm.nr = 5;
  kmm.adj.assign(5, {0, 1, 2, 3, 4});
  auto r = bipartite_perfect_matching(kmm);
  CHECK(r.perfect);
  CHECK(r.hall_audit);

  // star into one vertex
  BipartiteGraph star;
  star.nl = star.nr = 4;
  star.adj.assign(4, {0});
  auto r2 = bipartite_perfect_matching(star);
  CHECK(r2.matching.size == 1);
  CHECK(!r2.perfect);
  CHECK(!r2.violator.empty());

  // random instances above the Hall threshold are always perfect
  Rng rng(8);
  for (int rep = 0; rep < 200; ++rep) {
    int m = 10;
    BipartiteGraph g;
    g.nl = g.nr = m;
    g.adj.resize(m);
    // regular-ish: each left vertex picks m/2 + 1 distinct partners, then
    // right deficits are patched
    std::vector<int> rdeg(m, 0);
    for (int u = 0; u < m; ++u) {
      std::vector<int> picks(m);
      std::iota(picks.begin(), picks.end(), 0);
      rng.shuffle(picks);
      picks.resize(m / 2 + 1);
      for (int v : picks) {
        g.adj[u].push_back(v);
        ++rdeg[v];
      }
    }
    for (int v = 0; v < m; ++v)
      for (int u = 0; rdeg[v] < m / 2 && u < m; ++u) {
        if (std::find(g.adj[u].begin(), g.adj[u].end(), v) == g.adj[u].end()) {
          g.adj[u].push_back(v);
          ++rdeg[v];
        }
      }
    CHECK(bipartite_perfect_matching(g).perfect);
  }
}

TEST_CASE("close_c3") {
  // complete tripartite digraph, full V1, empty matching
  Rng rng(3);
  auto inst = make_close_c3_instance(8, 0, 0.0, rng);
  auto r = close_c3(inst.g, inst.labels, inst.matching, 0.1);
  REQUIRE(r.ok);
  CHECK(verify_hamilton_cycle(inst.g, r.cycle));

  // prescribed matching of 3 edges, |V1| = 17, n = 20
  auto inst2 = make_close_c3_instance(20, 3, 0.08, rng);
  auto r2 = close_c3(inst2.g, inst2.labels, inst2.matching, 0.1);
  REQUIRE(r2.ok);
  CHECK(verify_hamilton_cycle(inst2.g, r2.cycle));
  for (auto [w, u] : inst2.matching) {
    bool found = false;
    for (size_t i = 0; i < r2.cycle.size(); ++i)
      if (r2.cycle[i] == w && r2.cycle[(i + 1) % r2.cycle.size()] == u) found = true;
    CHECK(found);
  }

  // wrong matching cardinality is a hard error
  auto inst3 = make_close_c3_instance(10, 2, 0.0, rng);
  auto short_m = inst3.matching;
  short_m.pop_back();
  CHECK_THROWS_AS(close_c3(inst3.g, inst3.labels, short_m, 0.1), InvariantError);
}

TEST_CASE("close_gbeta") {
  // boundary case: empty matching
  auto inst = make_close_gbeta_instance(12, 0, 5);
  auto r = close_gbeta(inst.g, inst.labels, inst.matching, inst.eps);
  REQUIRE(r.ok);
  CHECK(verify_hamilton_cycle(inst.g, r.cycle));

  // two prescribed edges
  auto inst2 = make_close_gbeta_instance(24, 2, 9);
  auto r2 = close_gbeta(inst2.g, inst2.labels, inst2.matching, inst2.eps);
  REQUIRE(r2.ok);
  REQUIRE(inst2.matching.size() == 2);
  for (auto [w, u] : inst2.matching) {
    bool found = false;
    for (size_t i = 0; i < r2.cycle.size(); ++i)
      if (r2.cycle[i] == w && r2.cycle[(i + 1) % r2.cycle.size()] == u) found = true;
    CHECK(found);
  }

  // degenerate backward part: reduces to the clockwise-only closing (the
  // host is a digraph, so V2 -> V3 can be complete with V3 -> V2 on top)
  {
    int np = 10, f = 6;
    std::vector<Edge> edges;
    std::vector<int> labels(f + 2 * np);
    int v2b = f, v3b = f + np;
    for (int i = 0; i < np; ++i) {
      labels[v2b + i] = 2;
      labels[v3b + i] = 3;
    }
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < np; ++j) {
        edges.emplace_back(v3b + j, i);
        edges.emplace_back(i, v2b + j);
      }
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < np; ++j) {
        edges.emplace_back(v2b + i, v3b + j);
        if ((j - i + np) % np < 4) edges.emplace_back(v3b + j, v2b + i);
      }
    Digraph g(f + 2 * np, GraphMode::General, std::move(edges));
    auto r3 = close_gbeta(g, labels, {}, 0.05);
    CHECK(r3.audits_ok);
    REQUIRE(r3.ok);
    CHECK(verify_hamilton_cycle(g, r3.cycle));
  }
}
