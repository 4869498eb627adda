#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tripack/factorization.hpp"
#include "tripack/forests.hpp"
#include "tripack/generators.hpp"

#include <numeric>
#include <set>

using namespace tripack;

namespace {

// k-regular spanning subgraph of a tournament: union of k disjoint factors
Digraph factor_union(const TripartiteTournament& t, int k, uint64_t seed) {
  auto fs = one_factorization(t.graph(), seed);
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i)
    for (auto e : fs[i].edges()) edges.push_back(e);
  return Digraph(t.graph().vertex_count(), GraphMode::Oriented, std::move(edges));
}

std::vector<int> all_vertices(int n3) {
  std::vector<int> v(n3);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("cover_exceptional_gbeta on an exact member prunes everything") {
  auto [model, t] = gen_gbeta(8, 0.25, 4);
  CoverParams p;
  p.epsilon = 1e-9;
  p.gamma = 0.1;
  p.ell = 5;
  p.seed = 3;
  auto fam = cover_exceptional_gbeta(t, model, p);
  REQUIRE(fam.ok);
  REQUIRE(fam.forests.size() == 5);
  for (const auto& f : fam.forests) CHECK(f.edge_count() == 0);
}

TEST_CASE("cover_exceptional_gbeta on a perturbed member") {
  auto [model, t0] = gen_gbeta(12, 0.25, 11);
  auto t = perturb(t0, 4, 21);
  CoverParams p;
  p.epsilon = std::max(1e-9, edit_distance(t, t0) / (36.0 * 36.0));
  p.gamma = 2.0 / 36;  // admits every perturbed vertex
  p.ell = 4;
  p.tol = 6;
  p.seed = 5;
  auto fam = cover_exceptional_gbeta(t, model, p);
  REQUIRE(fam.forests.size() == 4);
  auto exc = exceptional_vertices(t, model, p.gamma);
  std::set<Edge> seen;
  for (const auto& f : fam.forests) {
    for (int v : exc.vertices) {
      CHECK(f.out_degree(v) == 1);
      CHECK(f.in_degree(v) == 1);
    }
    for (int s : f.startpoints()) CHECK(model.role_of(s) == 2);
    for (int e : f.endpoints()) CHECK(model.role_of(e) == 1);
    // the two half-balance equalities, in role terms
    std::array<std::array<long long, 3>, 3> c{};
    for (auto [u, v] : f.edges()) {
      CHECK(seen.insert({u, v}).second);  // pairwise edge-disjoint
      c[model.role_of(u)][model.role_of(v)]++;
    }
    CHECK(c[2][0] == c[0][1]);
    CHECK(c[1][0] == c[0][2]);
  }
}

TEST_CASE("cover_exceptional_c3") {
  // blow-up: nothing to guard, forests are empty
  auto [m0, c3] = gen_gbeta(6, 0.0, 2);
  CoverParams p;
  p.epsilon = 1e-9;
  p.gamma = 0.1;
  p.ell = 4;
  p.seed = 1;
  auto fam = cover_exceptional_c3(blowup_c3(6), m0, p);
  REQUIRE(fam.ok);
  for (const auto& f : fam.forests) CHECK(f.edge_count() == 0);

  // reversed triangle: the counterclockwise edges stay, triangle vertices
  // are internal
  int n = 3;
  auto tt = gen_t_triangle(n);
  auto [mb, cb] = gen_gbeta(n, 0.0, 2);
  CoverParams p2;
  p2.epsilon = 6.0 / 81;
  p2.gamma = 2.0 / (3 * n);
  p2.ell = 2;
  p2.tol = 6;  // keeps factors that carry all three reversed edges
  p2.seed = 7;
  auto fam2 = cover_exceptional_c3(tt, mb, p2);
  REQUIRE(fam2.forests.size() == 2);
  for (const auto& f : fam2.forests) {
    long long ccw = 0;
    std::array<long long, 3> triple{};
    for (auto [u, v] : f.edges())
      if (!mb.edge_in_model(u, v)) {
        ++ccw;
        triple[mb.role_of(v)]++;
      }
    CHECK(ccw <= 3);
    for (int v : {0, n, 2 * n}) {
      CHECK(f.out_degree(v) == 1);
      CHECK(f.in_degree(v) == 1);
    }
    // counterclockwise balance is exact
    std::array<std::array<long long, 3>, 3> c{};
    for (auto [u, v] : f.edges()) c[mb.role_of(u)][mb.role_of(v)]++;
    CHECK(c[2][1] == c[1][0]);
    CHECK(c[1][0] == c[0][2]);
  }
}

TEST_CASE("clean_forests") {
  // no busy vertices: family unchanged
  auto [model, t] = gen_gbeta(8, 0.25, 9);
  CoverParams p;
  p.epsilon = 0.05;
  p.gamma = 0.05;
  p.ell = 3;
  p.seed = 2;
  ForestFamily fam;
  fam.forests.assign(3, LinearForest(24));
  auto res = clean_forests(t, model, fam, p);
  REQUIRE(res.ok);
  CHECK(res.u_star.empty());
  for (const auto& f : res.family.forests) CHECK(f.edge_count() == 0);

  // reversed-triangle pipeline shape: triangle vertices saturated everywhere
  int n = 12;
  auto tt = gen_t_triangle(n);
  auto [mb, cb] = gen_gbeta(n, 0.0, 2);
  CoverParams pc;
  pc.epsilon = 6.0 / (36.0 * 36.0) * 9;  // measured closeness
  pc.gamma = 2.0 / (3 * n);
  pc.ell = 4;
  pc.tol = 8;
  pc.seed = 77;
  auto fam2 = cover_exceptional_c3(tt, mb, pc);
  REQUIRE(static_cast<int>(fam2.forests.size()) == 4);
  CoverParams pcl = pc;
  pcl.epsilon = pc.gamma;
  auto res2 = clean_forests(tt, mb, fam2, pcl);
  REQUIRE(res2.error.empty());
  for (int v : {0, n, 2 * n})
    for (const auto& f : res2.family.forests) {
      CHECK(f.out_degree(v) == 1);
      CHECK(f.in_degree(v) == 1);
    }
  // additions are three-edge one-directional blocks inside the model
  for (size_t i = 0; i < res2.family.forests.size(); ++i)
    for (auto [u, v] : res2.family.forests[i].edges())
      if (!fam2.forests[i].has_edge(u, v)) CHECK(mb.edge_in_model(u, v));
}

TEST_CASE("partition_host") {
  // complete tripartite digraph: exact slice arithmetic
  auto [kt, parts] = gen_random_regular_tripartite_digraph(16, 32, 3);
  auto hp = partition_host(kt, parts, 2, 0.3, 2.0, 9);
  REQUIRE(hp.hosts.size() == 8);
  CHECK(hp.audit.hard_ok());
  for (const auto& h : hp.hosts)
    for (int k = 0; k < 3; ++k) CHECK(h.w_class[k].size() == 4);

  // tournament: every edge lands in exactly one host
  auto t = gen_random_regular_tournament(27, 4, 2000);
  auto hp2 = partition_host(t.graph(), t.parts(), 2, 0.3, 2.0, 10);
  long long total = 0;
  for (const auto& h : hp2.hosts) total += h.edges.count();
  CHECK(total == t.graph().edge_count());
  const auto* cons = hp2.audit.find("edge_conservation");
  REQUIRE(cons);
  CHECK(cons->pass);

  CHECK_THROWS_AS(partition_host(kt, parts, 1, 0.3, 2.0, 1), InvariantError);
  CHECK_THROWS_AS(partition_host(kt, parts, 3, 0.3, 2.0, 1), InvariantError);
}

TEST_CASE("partition_host statistical audits") {
  // soft audits pass most of the time at doubled tolerance
  int pass = 0, runs = 20;
  for (int s = 0; s < runs; ++s) {
    auto t = gen_random_regular_tournament(27, 100 + s, 3000);
    auto hp = partition_host(t.graph(), t.parts(), 2, 0.3, 2.0, 50 + s);
    bool all = hp.audit.all_ok();
    for (const auto& h : hp.hosts) all = all && h.audit.all_ok();
    pass += all;
  }
  CHECK(pass >= runs * 95 / 100);
}

TEST_CASE("path_cover") {
  // single Hamilton cycle: one forest with m-1 edges
  int m = 12;
  std::vector<Edge> cyc;
  for (int v = 0; v < m; ++v) cyc.emplace_back(v, (v + 1) % m);
  Digraph h(m, GraphMode::General, std::move(cyc));
  auto fam = path_cover(h, all_vertices(m), 1, 1, 2.0, 1);
  REQUIRE(fam.ok);
  CHECK(fam.forests[0].edge_count() == m - 1);

  // complete digraph: many near-spanning forests
  std::vector<Edge> edges;
  for (int u = 0; u < 10; ++u)
    for (int v = 0; v < 10; ++v)
      if (u != v) edges.emplace_back(u, v);
  Digraph kd(10, GraphMode::General, std::move(edges));
  auto fam2 = path_cover(kd, all_vertices(10), 9, 8, 2.0, 5);
  REQUIRE(fam2.ok);
  std::set<Edge> used;
  for (const auto& f : fam2.forests) {
    CHECK(f.edge_count() >= 9);
    for (auto e : f.edges()) CHECK(used.insert(e).second);
  }

  // empty host: shortfall reported
  Digraph empty(6, GraphMode::General, {});
  auto fam3 = path_cover(empty, all_vertices(6), 1, 2, 2.0, 1);
  CHECK(!fam3.ok);
  CHECK(!fam3.error.empty());
}

TEST_CASE("balanced_covers") {
  auto [model, t] = gen_gbeta(24, 0.25, 8);
  auto h = factor_union(t, 12, 3);
  BalancedCoverParams p;
  p.epsilon = 1e-6;
  p.gamma = 12.0 / 24;
  p.ell = 3;
  p.seed = 4;
  EdgeBitset reserved(72);
  std::vector<std::vector<int>> forbidden(3);
  forbidden[0] = {0, 30};  // arbitrary per-forest exclusions
  auto fam = balanced_covers(h, all_vertices(72), t.parts(), model, p, forbidden,
                             reserved, nullptr);
  REQUIRE(static_cast<int>(fam.forests.size()) == 3);
  CHECK(fam.audit.hard_ok());
  std::set<Edge> used;
  for (int i = 0; i < 3; ++i) {
    const auto& f = fam.forests[i];
    auto counts = bipartite_counts(t.parts(), f.edges());
    CHECK(counts.bidirectionally_balanced());  // exact, not approximate
    for (auto e : f.edges()) CHECK(used.insert(e).second);
    if (i == 0) {
      CHECK(!f.touches(0));
      CHECK(!f.touches(30));
    }
    // endpoint profile equalities follow from exact balance
    auto prof = endpoint_profile(t, f, &model);
    CHECK(prof.six_equal);
    CHECK(prof.v1_split_equal);
  }
}

TEST_CASE("endpoint_profile") {
  auto [model, t] = gen_gbeta(5, 0.2, 6);
  LinearForest empty(15);
  auto prof = endpoint_profile(t, empty);
  CHECK(prof.plus == std::array<int, 3>{5, 5, 5});
  CHECK(prof.minus == std::array<int, 3>{5, 5, 5});
  CHECK(prof.six_equal);

  // brute recount: class tallies of degree-free vertices match the profile
  LinearForest f(15);
  for (auto [u, v] : t.graph().edges())
    if (f.can_add(u, v) && f.edge_count() < 4) f.add_edge(u, v);
  auto prof2 = endpoint_profile(t, f);
  std::array<int, 3> plus{}, minus{};
  for (int v = 0; v < 15; ++v) {
    if (f.out_degree(v) == 0) plus[t.parts().class_of(v)]++;
    if (f.in_degree(v) == 0) minus[t.parts().class_of(v)]++;
  }
  CHECK(prof2.plus == plus);
  CHECK(prof2.minus == minus);
}
