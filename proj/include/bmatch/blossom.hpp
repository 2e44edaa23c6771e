#pragma once

#include <optional>
#include <vector>

#include "bmatch/core.hpp"

namespace bmatch {

// Loop-free graph with at most one edge per unordered vertex pair.
struct SimpleWeightedGraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;

  // Throws Error on a loop, a parallel edge or an endpoint out of range.
  void check() const;
};

struct PerfectMatching {
  std::vector<EdgeId> edges;  // indices into SimpleWeightedGraph::edges, sorted
  Weight weight = 0;
};

// Maximum-weight matching via Edmonds' primal-dual blossom method, O(n^3).
// All arithmetic is integral (weights are doubled internally). Returns the
// matched edge index of each vertex (-1 if exposed). With `max_cardinality`
// the result has maximum weight among maximum-cardinality matchings.
std::vector<long> max_weight_matching(const SimpleWeightedGraph& g, bool max_cardinality);

// Maximum-weight perfect matching, or nullopt when none exists. Deterministic
// for a fixed edge order. Throws WeightOverflow if weights are too large for
// exact dual arithmetic.
std::optional<PerfectMatching> max_weight_perfect_matching(const SimpleWeightedGraph& g);

}  // namespace bmatch
