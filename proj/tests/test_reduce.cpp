#include <doctest.h>

#include <algorithm>

#include "bmatch/harness.hpp"
#include "bmatch/reduce.hpp"
#include "support.hpp"

using namespace bmatch;

namespace {

// Best (a,b)-matching weight by direct enumeration.
std::optional<Weight> brute_ab(const ABInstance& ab) {
  const std::size_t m = ab.graph.edge_count();
  std::optional<Weight> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<EdgeId> es;
    for (EdgeId e = 0; e < m; ++e)
      if (mask >> e & 1) es.push_back(e);
    const Matching f(es);
    bool ok = true;
    for (Vertex v = 0; v < ab.graph.vertex_count() && ok; ++v) {
      const int d = degree(ab.graph, f, v);
      ok = d >= ab.a[v] && d <= ab.b[v];
    }
    if (ok && (!best || total_weight(ab.graph, f) > *best)) best = total_weight(ab.graph, f);
  }
  return best;
}

std::size_t count_role(const GadgetGraph& g, GadgetRole r) {
  return static_cast<std::size_t>(
      std::count_if(g.nodes.begin(), g.nodes.end(), [&](const GadgetNode& n) { return n.role == r; }));
}

}  // namespace

TEST_CASE("uniform_to_ab loop construction") {
  MultiGraph g(2);
  for (int i = 0; i < 5; ++i) g.add_edge(0, 1, i);
  auto [ab, map] = uniform_to_ab(g, {UniformVertexSpec::parity(1, 5), UniformVertexSpec::interval(0, 3)});
  CHECK(ab.graph.edge_count() == 7);
  CHECK(ab.a == std::vector<int>{5, 0});
  CHECK(ab.b == std::vector<int>{5, 3});
  for (EdgeId e = 5; e < 7; ++e) {
    CHECK(ab.graph.edge(e).is_loop());
    CHECK(ab.graph.edge(e).w == 0);
    CHECK(!map.origin[e]);
  }
  for (EdgeId e = 0; e < 5; ++e) {
    CHECK(map.origin[e] == e);
    CHECK(ab.graph.edge(e).w == static_cast<Weight>(e));
  }

  MultiGraph h(1);
  for (int i = 0; i < 2; ++i) h.add_edge(0, 0);
  auto degenerate = uniform_to_ab(h, {UniformVertexSpec::parity(4, 4)}).first;
  CHECK(degenerate.graph.edge_count() == 2);
  CHECK(degenerate.a == std::vector<int>{4});
}

TEST_CASE("spec validation") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(check_spec(g, {UniformVertexSpec::parity(0, 1), UniformVertexSpec::interval(0, 1)}), BadSpec);
  CHECK_THROWS_AS(check_spec(g, {UniformVertexSpec::interval(0, 2), UniformVertexSpec::interval(0, 1)}), BadSpec);
  CHECK_THROWS_AS(check_spec(g, {UniformVertexSpec::interval(1, 0), UniformVertexSpec::interval(0, 1)}), BadSpec);
  CHECK_THROWS_AS(check_spec(g, {UniformVertexSpec::interval(0, 1)}), BadSpec);
  CHECK_NOTHROW(check_spec(g, {UniformVertexSpec::parity(1, 1), UniformVertexSpec::interval(0, 1)}));
}

TEST_CASE("gadget node arithmetic") {
  ABInstance ab;
  ab.graph = MultiGraph(4);
  for (Vertex v = 1; v < 4; ++v) ab.graph.add_edge(0, v);
  ab.a = {1, 0, 0, 1};
  ab.b = {2, 1, 1, 1};
  const GadgetGraph gg = ab_to_pm(ab);
  CHECK_NOTHROW(gg.graph.check());
  CHECK(count_role(gg, GadgetRole::External) == 6);
  // center: 3 - 1 internals, 1 of them pool-connected; leaves 1 and 2 one each
  std::size_t center_internal = 0, center_pool = 0;
  for (const auto& n : gg.nodes) {
    if (n.owner != 0) continue;
    center_internal += n.role == GadgetRole::Internal || n.role == GadgetRole::PoolInternal;
    center_pool += n.role == GadgetRole::PoolInternal;
  }
  CHECK(center_internal == 2);
  CHECK(center_pool == 1);
  // sum(b - a) = 3, sum b = 5 is odd
  CHECK(count_role(gg, GadgetRole::Pool) == 4);

  ab.b[1] = 2;
  CHECK_THROWS_AS(ab_to_pm(ab), BoundsError);
}

TEST_CASE("forced single edge and infeasible path") {
  ABInstance one;
  one.graph = MultiGraph(2);
  one.graph.add_edge(0, 1, 3);
  one.a = one.b = {1, 1};
  const auto g1 = ab_to_pm(one);
  CHECK(count_role(g1, GadgetRole::External) == 2);
  CHECK(count_role(g1, GadgetRole::Pool) == 0);
  const auto pm1 = max_weight_perfect_matching(g1.graph);
  REQUIRE(pm1);
  CHECK(lift(g1.lift, pm1->edges) == Matching{0});

  ABInstance path;
  path.graph = MultiGraph(3);
  path.graph.add_edge(0, 1);
  path.graph.add_edge(1, 2);
  path.a = path.b = {1, 1, 1};
  CHECK(!brute_ab(path));
  CHECK(!max_weight_perfect_matching(ab_to_pm(path).graph));
}

TEST_CASE("lift and compose") {
  LiftMap inner{{0, 1, std::nullopt}};
  LiftMap outer{{2, 1, std::nullopt, 0}};
  const LiftMap c = compose(outer, inner);
  REQUIRE(c.origin.size() == 4);
  CHECK(!c.origin[0]);
  CHECK(c.origin[1] == 1);
  CHECK(!c.origin[2]);
  CHECK(c.origin[3] == 0);
  const std::vector<EdgeId> only_gadget{0, 2};
  CHECK(lift(c, only_gadget).empty());
  const std::vector<EdgeId> copy3{3};
  CHECK(lift(LiftMap{{std::nullopt, std::nullopt, std::nullopt, 3}}, copy3) == Matching{3});
}

TEST_CASE("embed round trip and pool parity on every (a,b)-matching") {
  Rng rng(31);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    const ABInstance ab = random_ab_instance(rng, 5, 6);
    const GadgetGraph gg = ab_to_pm(ab);
    CHECK_NOTHROW(gg.graph.check());
    int sum_a = 0;
    for (int x : ab.a) sum_a += x;
    const std::size_t m = ab.graph.edge_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<EdgeId> es;
      for (EdgeId e = 0; e < m; ++e)
        if (mask >> e & 1) es.push_back(e);
      const Matching f(es);
      bool ok = true;
      for (Vertex v = 0; v < ab.graph.vertex_count() && ok; ++v) {
        const int d = degree(ab.graph, f, v);
        ok = d >= ab.a[v] && d <= ab.b[v];
      }
      if (!ok) {
        CHECK_THROWS_AS(embed(ab, gg, f), NotFeasible);
        continue;
      }
      const auto pm = embed(ab, gg, f);
      std::vector<int> cover(gg.graph.vertex_count, 0);
      Weight w = 0;
      for (EdgeId e : pm) {
        ++cover[gg.graph.edges[e].u];
        ++cover[gg.graph.edges[e].v];
        w += gg.graph.edges[e].w;
      }
      CHECK(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
      CHECK(w == total_weight(ab.graph, f));
      CHECK(lift(gg.lift, pm) == f);
      CHECK(static_cast<int>(pool_internal_pairs(gg, pm)) % 2 == sum_a % 2);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("perfect matching optimum equals (a,b) brute force") {
  Rng rng(32);
  for (int t = 0; t < 150; ++t) {
    const ABInstance ab = random_ab_instance(rng, 6, 8);
    const GadgetGraph gg = ab_to_pm(ab);
    const auto pm = max_weight_perfect_matching(gg.graph);
    const auto bf = brute_ab(ab);
    REQUIRE(pm.has_value() == bf.has_value());
    if (!pm) continue;
    CHECK(pm->weight == *bf);
    CHECK(total_weight(ab.graph, lift(gg.lift, pm->edges)) == *bf);
  }
}
