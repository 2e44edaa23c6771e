#include <doctest.h>

#include <limits>

#include "bmatch/core.hpp"
#include "bmatch/generator.hpp"
#include "support.hpp"

using namespace bmatch;

TEST_CASE("degree set construction") {
  CHECK_THROWS_AS(DegreeSet({2, 1}), Error);
  CHECK_THROWS_AS(DegreeSet({1, 1}), Error);
  CHECK_THROWS_AS(DegreeSet({-1, 0}), Error);
  CHECK(DegreeSet::interval(1, 3) == DegreeSet{1, 2, 3});
  CHECK(DegreeSet::parity(1, 5) == DegreeSet{1, 3, 5});
  CHECK(DegreeSet{0, 1, 3, 5}.longest_gap() == 1);
  CHECK(DegreeSet{0, 3}.longest_gap() == 2);
  CHECK(DegreeSet{4}.longest_gap() == 0);
  CHECK(DegreeSet{0, 1, 3, 5}.truncated(3) == DegreeSet{0, 1, 3});
}

TEST_CASE("parity intervals of the fixture sets") {
  const auto iv = parity_intervals(DegreeSet{0, 1, 3, 5});
  REQUIRE(iv.size() == 2);
  CHECK(iv[0] == ParityInterval{0, 0});
  CHECK(iv[1] == ParityInterval{1, 5});
  CHECK(parity_intervals(DegreeSet{0, 2}).size() == 1);
  CHECK(parity_intervals(DegreeSet{0, 1, 2, 3}).size() == 4);
  CHECK(interval_index(DegreeSet{0, 1, 3, 5}, 3) == 1);
  CHECK(interval_of(DegreeSet{0, 1, 3, 5}, 0) == ParityInterval{0, 0});
  CHECK_THROWS_AS(interval_index(DegreeSet{0, 2}, 1), NotInSet);
}

TEST_CASE("parity intervals partition and touch") {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    // gap-<=1 set from random steps of 1 or 2
    std::vector<int> v{static_cast<int>(rng.uniform(0, 3))};
    const int len = static_cast<int>(rng.uniform(0, 6));
    for (int i = 0; i < len; ++i) v.push_back(v.back() + static_cast<int>(rng.uniform(1, 2)));
    const DegreeSet b(v);
    const auto iv = parity_intervals(b);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      for (int k = iv[i].lo; k <= iv[i].hi; k += 2) CHECK(b.contains(k));
      covered += static_cast<std::size_t>((iv[i].hi - iv[i].lo) / 2 + 1);
      if (i + 1 < iv.size()) CHECK(iv[i].hi + 1 == iv[i + 1].lo);
    }
    CHECK(covered == b.values().size());
    for (int k : b.values()) CHECK(iv[interval_index(b, k)].contains(k));
  }
}

TEST_CASE("checked arithmetic") {
  constexpr Weight big = std::numeric_limits<Weight>::max();
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_add(big, 1), WeightOverflow);
  CHECK_THROWS_AS(checked_sub(-big - 1, 1), WeightOverflow);
  CHECK_THROWS_AS(checked_mul(big / 2 + 1, 2), WeightOverflow);
  CHECK(checked_mul(-4, 5) == -20);
}

TEST_CASE("multigraph degrees count loops twice") {
  MultiGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_edge(2, 2);
  CHECK(g.degree(0) == 2);
  CHECK(g.degree(2) == 2);
  const Matching f{2};
  CHECK(degree(g, f, 2) == 2);
  CHECK(degrees(g, Matching{0, 1}) == std::vector<int>{2, 2, 0});
}

TEST_CASE("validation") {
  BInstance inst;
  inst.graph = MultiGraph(3);
  inst.graph.add_edge(0, 1);
  inst.graph.add_edge(1, 2);
  inst.degree_sets = {DegreeSet{0, 3}, DegreeSet{0, 1}, DegreeSet{1}};
  // 3 exceeds d(0) = 1, so the gap disappears after truncation
  CHECK(validate(inst).empty());
  CHECK(normalized(inst).degree_sets[0] == DegreeSet{0});

  inst.degree_sets[1] = DegreeSet{0, 3};
  inst.graph.add_edge(1, 1);
  const auto issues = validate(inst);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].kind == IssueKind::GapTooLong);
  CHECK(issues[0].index == 1);
  CHECK_THROWS_AS(normalized(inst), InvalidInstance);

  BInstance empty = inst;
  empty.degree_sets = {DegreeSet{2}, DegreeSet{0, 1}, DegreeSet{1}};
  REQUIRE(!validate(empty).empty());
  CHECK(validate(empty)[0].kind == IssueKind::EmptyDegreeSet);

  BInstance short_sets = inst;
  short_sets.degree_sets.pop_back();
  REQUIRE(!validate(short_sets).empty());
  CHECK(validate(short_sets)[0].kind == IssueKind::CountMismatch);
}

TEST_CASE("matching basics") {
  const Matching a{3, 1, 3};
  CHECK(a.edges() == std::vector<EdgeId>{1, 3});
  CHECK(symmetric_difference(a, Matching{3, 4}) == Matching{1, 4});
  MultiGraph g(2);
  g.add_edge(0, 1, 5);
  CHECK_THROWS_AS(check_edges(g, Matching{1}), Error);
}

TEST_CASE("objective values on the fixture") {
  BInstance inst = testing_support::fig2();
  const Matching m7 = testing_support::fig2_m7();
  CHECK(is_b_matching(inst, m7));
  CHECK(reported_value(inst, m7) == 7);
  inst.objective = Objective::MinCard;
  CHECK(objective_value(inst, m7) == -7);
  CHECK(reported_value(inst, m7) == 7);
  CHECK(is_minimization(Objective::MinWeight));
  CHECK(parse_objective("max-weight") == Objective::MaxWeight);
  CHECK(to_string(Objective::MinCard) == "min-card");
  CHECK_THROWS_AS(parse_objective("biggest"), Error);
  // the empty set violates every B(v) = {1}
  CHECK(!is_b_matching(inst, Matching{}));
}
