#pragma once

// Random small instances and matching pairs shared by the property tests,
// the acceptance binary and `oracle --verify`.

#include <optional>
#include <string>

#include "bmatch/core.hpp"
#include "bmatch/generator.hpp"
#include "bmatch/reduce.hpp"
#include "bmatch/structure.hpp"

namespace bmatch {

struct SmallInstanceOptions {
  std::size_t max_n = 8;
  std::size_t min_m = 0;
  std::size_t max_m = 12;
  Objective objective = Objective::MaxCard;
  Weight min_weight = 1;
  Weight max_weight = 1;
  // Probability (in quarters) that the instance is drawn with a planted
  // feasible subset; the rest may be infeasible.
  int planted_quarters = 3;
};

// n in [1, max_n], m in [min_m, max_m] (capped for simple graphs), profile and multigraph mode drawn from
// `rng`.
BInstance random_small_instance(Rng& rng, const SmallInstanceOptions& options);

// Uniform spec drawn inside the vertex degrees, half interval and half parity.
UniformSpec random_uniform_spec(Rng& rng, const MultiGraph& g);

ABInstance random_ab_instance(Rng& rng, std::size_t max_n, std::size_t max_m);

struct MatchingPair {
  BInstance instance;
  Matching m;
  Matching n;
};

// Redraws until the instance has two distinct B-matchings, then picks two of
// them uniformly.
MatchingPair random_pair(Rng& rng, const SmallInstanceOptions& options);

// Checks the decomposition contract: every intermediate is a B-matching, each
// step is canonical for the matching it is applied to, cycles and steps are
// pairwise disjoint and cover M + N exactly, and dist to N strictly drops.
// Returns a description of the first failure.
std::optional<std::string> check_sequence(const BInstance& instance, const Matching& m, const Matching& n,
                                          const CanonicalSequence& seq);

}  // namespace bmatch
