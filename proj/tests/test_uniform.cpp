#include <doctest.h>

#include "bmatch/harness.hpp"
#include "bmatch/neighbourhood.hpp"
#include "bmatch/uniform.hpp"
#include "support.hpp"

using namespace bmatch;
using testing_support::brute_best;

namespace {

BInstance triangle() {
  BInstance t;
  t.graph = MultiGraph(3);
  t.graph.add_edge(0, 1);
  t.graph.add_edge(1, 2);
  t.graph.add_edge(0, 2);
  t.degree_sets.assign(3, DegreeSet{0, 1});
  return t;
}

bool satisfies(const BInstance& inst, const UniformSpec& spec, const Matching& f) {
  for (Vertex v = 0; v < inst.vertex_count(); ++v)
    if (!spec[v].allows(degree(inst.graph, f, v))) return false;
  return true;
}

}  // namespace

TEST_CASE("triangle") {
  const BInstance t = triangle();
  const UniformSpec loose(3, UniformVertexSpec::interval(0, 1));
  const auto f = solve_uniform(t, loose);
  REQUIRE(f);
  CHECK(f->size() == 1);
  CHECK(!solve_uniform(t, UniformSpec(3, UniformVertexSpec::interval(1, 1))));
  // all even: the whole triangle or nothing
  const auto even = solve_uniform(t, UniformSpec(3, UniformVertexSpec::parity(0, 2)));
  REQUIRE(even);
  CHECK(even->size() == 3);
}

TEST_CASE("same-type optimum on the fixture is the depicted matching's size") {
  const BInstance inst = testing_support::fig2();
  const Matching m7 = testing_support::fig2_m7();
  const auto type = current_type(inst, m7);
  const UniformSpec spec = candidate_spec(inst, type, CandidateType{});
  const auto f = solve_uniform(inst, spec);
  REQUIRE(f);
  CHECK(f->size() == 7);
  const auto bf = brute_best(inst, [&](Vertex v, int d) { return spec[v].allows(d); });
  CHECK(bf == 7);
}

TEST_CASE("random uniform instances against brute force") {
  Rng rng(404);
  SmallInstanceOptions opt;
  opt.objective = Objective::MaxWeight;
  opt.min_weight = -5;
  opt.max_weight = 5;
  int feasible = 0;
  for (int t = 0; t < 200; ++t) {
    BInstance inst = random_small_instance(rng, opt);
    const UniformSpec spec = random_uniform_spec(rng, inst.graph);
    for (Objective o : {Objective::MaxWeight, Objective::MinWeight, Objective::MaxCard}) {
      inst.objective = o;
      const auto f = solve_uniform(inst, spec);
      const auto bf = brute_best(inst, [&](Vertex v, int d) { return spec[v].allows(d); });
      REQUIRE(f.has_value() == bf.has_value());
      if (!f) continue;
      ++feasible;
      CHECK(satisfies(inst, spec, *f));
      CHECK(objective_value(inst, *f) == *bf);
    }
  }
  CHECK(feasible > 100);
}

TEST_CASE("min sense is max of negated weights") {
  Rng rng(405);
  SmallInstanceOptions opt;
  opt.objective = Objective::MinWeight;
  opt.min_weight = -5;
  opt.max_weight = 5;
  for (int t = 0; t < 100; ++t) {
    BInstance inst = random_small_instance(rng, opt);
    const UniformSpec spec = random_uniform_spec(rng, inst.graph);
    BInstance neg = inst;
    neg.objective = Objective::MaxWeight;
    neg.graph = MultiGraph(inst.vertex_count());
    for (const Edge& e : inst.graph.edges()) neg.graph.add_edge(e.u, e.v, -e.w);
    const auto a = solve_uniform(inst, spec);
    const auto b = solve_uniform(neg, spec);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(total_weight(inst.graph, *a) == -total_weight(neg.graph, *b));
  }
}

TEST_CASE("deterministic") {
  Rng rng(406);
  SmallInstanceOptions opt;
  for (int t = 0; t < 30; ++t) {
    const BInstance inst = random_small_instance(rng, opt);
    const UniformSpec spec = random_uniform_spec(rng, inst.graph);
    CHECK(solve_uniform(inst, spec) == solve_uniform(inst, spec));
  }
}
