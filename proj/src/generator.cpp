#include "bmatch/generator.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace bmatch {

std::string to_string(DegreeProfile p) {
  switch (p) {
    case DegreeProfile::Interval: return "interval";
    case DegreeProfile::Parity: return "parity";
    case DegreeProfile::Mixed: return "mixed";
  }
  return "?";
}

DegreeProfile parse_profile(const std::string& name) {
  for (DegreeProfile p : {DegreeProfile::Interval, DegreeProfile::Parity, DegreeProfile::Mixed})
    if (to_string(p) == name) return p;
  throw Error("unknown degree profile '" + name + "'");
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(engine_());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

namespace {

std::vector<std::pair<Vertex, Vertex>> draw_edges(Rng& rng, const GeneratorOptions& o) {
  std::vector<std::pair<Vertex, Vertex>> out;
  if (o.n == 0) {
    if (o.m != 0) throw Error("edges need at least one vertex");
    return out;
  }
  const auto last = static_cast<std::int64_t>(o.n) - 1;
  if (o.multigraph) {
    for (std::size_t i = 0; i < o.m; ++i) out.emplace_back(rng.uniform(0, last), rng.uniform(0, last));
    return out;
  }
  if (o.m > o.n * (o.n - 1) / 2) throw Error("simple graph on " + std::to_string(o.n) + " vertices cannot hold " +
                                            std::to_string(o.m) + " edges");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < o.n; ++u)
    for (Vertex v = u + 1; v < o.n; ++v) pairs.emplace_back(u, v);
  // Partial Fisher-Yates: the first m slots are a uniform sample.
  for (std::size_t i = 0; i < o.m; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(i),
                                                        static_cast<std::int64_t>(pairs.size()) - 1));
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(o.m);
  return pairs;
}

// Parity interval inside [0, d] containing `anchor`.
ParityInterval parity_around(Rng& rng, int anchor, int d) {
  const int down = static_cast<int>(rng.uniform(0, anchor / 2));
  const int up = static_cast<int>(rng.uniform(0, (d - anchor) / 2));
  return {anchor - 2 * down, anchor + 2 * up};
}

DegreeSet draw_set(Rng& rng, DegreeProfile profile, int anchor, int d) {
  switch (profile) {
    case DegreeProfile::Interval:
      return DegreeSet::interval(static_cast<int>(rng.uniform(0, anchor)), static_cast<int>(rng.uniform(anchor, d)));
    case DegreeProfile::Parity: {
      const ParityInterval p = parity_around(rng, anchor, d);
      return DegreeSet::parity(p.lo, p.hi);
    }
    case DegreeProfile::Mixed: {
      // A chain of touching parity intervals: a neighbour on the right starts
      // at hi + 1, one on the left ends at lo - 1.
      std::vector<ParityInterval> chain{parity_around(rng, anchor, d)};
      const int extra = static_cast<int>(rng.uniform(0, 2));
      for (int k = 0; k < extra; ++k) {
        if (rng.coin()) {
          const int lo = chain.back().hi + 1;
          if (lo > d) continue;
          chain.push_back({lo, lo + 2 * static_cast<int>(rng.uniform(0, (d - lo) / 2))});
        } else {
          const int hi = chain.front().lo - 1;
          if (hi < 0) continue;
          chain.insert(chain.begin(), {hi - 2 * static_cast<int>(rng.uniform(0, hi / 2)), hi});
        }
      }
      std::vector<int> values;
      for (const auto& p : chain)
        for (int k = p.lo; k <= p.hi; k += 2) values.push_back(k);
      return DegreeSet(std::move(values));
    }
  }
  throw Error("unknown degree profile");
}

}  // namespace

BInstance generate(const GeneratorOptions& o) {
  if (o.min_weight > o.max_weight) throw Error("empty weight range");
  Rng rng(o.seed);
  BInstance inst;
  inst.graph = MultiGraph(o.n);
  inst.objective = o.objective;
  for (const auto& [u, v] : draw_edges(rng, o)) inst.graph.add_edge(u, v, rng.uniform(o.min_weight, o.max_weight));

  const auto d = inst.graph.degrees();
  std::vector<int> anchor(o.n, 0);
  if (o.planted) {
    for (const Edge& e : inst.graph.edges()) {
      if (!rng.coin()) continue;
      ++anchor[e.u];
      ++anchor[e.v];
    }
  }
  for (Vertex v = 0; v < o.n; ++v) {
    const int a = o.planted ? anchor[v] : static_cast<int>(rng.uniform(0, d[v]));
    inst.degree_sets.push_back(draw_set(rng, o.profile, a, d[v]));
  }
  return inst;
}

}  // namespace bmatch
