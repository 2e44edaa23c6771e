#pragma once

// Shared helpers for the unit tests: fixtures and small independent
// brute-force checks that do not go through the library's oracle.

#include <optional>
#include <string>
#include <vector>

#include "bmatch/blossom.hpp"
#include "bmatch/core.hpp"
#include "bmatch/io.hpp"

namespace testing_support {

inline bmatch::BInstance fig2() { return bmatch::read_instance_file(std::string(BMATCH_FIXTURES) + "/fig2.bm"); }

inline bmatch::Matching fig2_m7() {
  return bmatch::read_certificate_file(std::string(BMATCH_FIXTURES) + "/fig2_m7.cert").matching;
}

// Best perfect matching weight by recursion on the lowest unmatched vertex;
// found = false when none exists.
struct BrutePM {
  bool found = false;
  bmatch::Weight weight = 0;
};

inline void brute_pm_rec(const bmatch::SimpleWeightedGraph& g, std::vector<char>& used, bmatch::Weight acc,
                         BrutePM& best) {
  std::size_t v = 0;
  while (v < g.vertex_count && used[v]) ++v;
  if (v == g.vertex_count) {
    if (!best.found || acc > best.weight) best = {true, acc};
    return;
  }
  used[v] = 1;
  for (const auto& e : g.edges) {
    if (e.u != v && e.v != v) continue;
    const std::size_t o = e.other(v);
    if (used[o]) continue;
    used[o] = 1;
    brute_pm_rec(g, used, acc + e.w, best);
    used[o] = 0;
  }
  used[v] = 0;
}

inline BrutePM brute_pm(const bmatch::SimpleWeightedGraph& g) {
  BrutePM best;
  std::vector<char> used(g.vertex_count, 0);
  brute_pm_rec(g, used, 0, best);
  return best;
}

// Maximum weight of any matching (not necessarily perfect), optionally
// restricted to maximum cardinality; returns {cardinality, weight}.
inline std::pair<std::size_t, bmatch::Weight> brute_matching(const bmatch::SimpleWeightedGraph& g, bool maxcard) {
  const std::size_t m = g.edges.size();
  std::pair<std::size_t, bmatch::Weight> best{0, 0};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<char> used(g.vertex_count, 0);
    bool ok = true;
    std::size_t c = 0;
    bmatch::Weight w = 0;
    for (std::size_t e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1)) continue;
      const auto& ed = g.edges[e];
      if (used[ed.u] || used[ed.v]) ok = false;
      used[ed.u] = used[ed.v] = 1;
      ++c;
      w += ed.w;
    }
    if (!ok) continue;
    const bool better = maxcard ? (c > best.first || (c == best.first && w > best.second)) : w > best.second;
    if (better) best = {c, w};
  }
  return best;
}

// Best objective value over edge subsets whose degrees pass `ok(v, d)`,
// straight from the definition; nullopt when no subset passes.
template <class Ok>
std::optional<bmatch::Weight> brute_best(const bmatch::BInstance& inst, Ok ok) {
  const std::size_t m = inst.edge_count();
  std::optional<bmatch::Weight> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> d(inst.vertex_count(), 0);
    bmatch::Weight value = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      const auto& ed = inst.graph.edge(e);
      ++d[ed.u];
      ++d[ed.v];
      value += bmatch::objective_gain(inst.objective, ed);
    }
    bool good = true;
    for (std::size_t v = 0; v < d.size() && good; ++v) good = ok(v, d[v]);
    if (good && (!best || value > *best)) best = value;
  }
  return best;
}

inline std::optional<bmatch::Weight> brute_optimum(const bmatch::BInstance& inst) {
  return brute_best(inst, [&](std::size_t v, int d) { return inst.degree_sets[v].contains(d); });
}

}  // namespace testing_support
