#include "bmatch/harness.hpp"

#include <limits>
#include <set>

#include "bmatch/oracle.hpp"

namespace bmatch {

BInstance random_small_instance(Rng& rng, const SmallInstanceOptions& o) {
  GeneratorOptions g;
  g.n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(o.max_n)));
  g.multigraph = rng.uniform(0, 3) == 0;
  const std::size_t cap = g.multigraph ? o.max_m : std::min(o.max_m, g.n * (g.n - 1) / 2);
  g.m = static_cast<std::size_t>(
      rng.uniform(static_cast<std::int64_t>(std::min(o.min_m, cap)), static_cast<std::int64_t>(cap)));
  g.seed = static_cast<std::uint64_t>(rng.uniform(0, std::numeric_limits<std::int64_t>::max()));
  g.profile = static_cast<DegreeProfile>(rng.uniform(0, 2));
  g.planted = rng.uniform(0, 3) < o.planted_quarters;
  g.min_weight = o.min_weight;
  g.max_weight = o.max_weight;
  g.objective = o.objective;
  return generate(g);
}

UniformSpec random_uniform_spec(Rng& rng, const MultiGraph& g) {
  UniformSpec spec;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int d = g.degree(v);
    const int lo = static_cast<int>(rng.uniform(0, d));
    if (rng.coin()) {
      spec.push_back(UniformVertexSpec::interval(lo, static_cast<int>(rng.uniform(lo, d))));
    } else {
      spec.push_back(UniformVertexSpec::parity(lo, lo + 2 * static_cast<int>(rng.uniform(0, (d - lo) / 2))));
    }
  }
  return spec;
}

ABInstance random_ab_instance(Rng& rng, std::size_t max_n, std::size_t max_m) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_n)));
  const auto m = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_m)));
  ABInstance ab;
  ab.graph = MultiGraph(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = static_cast<Vertex>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const auto v = static_cast<Vertex>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    ab.graph.add_edge(u, v, rng.uniform(-5, 5));
  }
  for (Vertex v = 0; v < n; ++v) {
    const int d = ab.graph.degree(v);
    const int a = static_cast<int>(rng.uniform(0, d));
    ab.a.push_back(a);
    ab.b.push_back(static_cast<int>(rng.uniform(a, d)));
  }
  return ab;
}

MatchingPair random_pair(Rng& rng, const SmallInstanceOptions& o) {
  while (true) {
    MatchingPair p;
    p.instance = normalized(random_small_instance(rng, o));
    const auto all = enumerate_b_matchings(p.instance, o.max_m);
    if (all.size() < 2) continue;
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(all.size()) - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(all.size()) - 2));
    if (j >= i) ++j;
    p.m = all[i];
    p.n = all[j];
    return p;
  }
}

std::optional<std::string> check_sequence(const BInstance& instance, const Matching& m, const Matching& n,
                                          const CanonicalSequence& seq) {
  const MultiGraph& g = instance.graph;
  std::set<EdgeId> covered;
  auto cover = [&](const std::vector<EdgeId>& edges) {
    for (EdgeId e : edges)
      if (!covered.insert(e).second) return false;
    return true;
  };

  Matching cur = m;
  for (const auto& c : seq.cycles) {
    if (!is_alternating(g, m, c) || c.kind != AlternatingWalk::Kind::Cycle) return "cycle is not alternating";
    if (!cover(c.edge_ids())) return "cycles overlap";
    cur = apply(cur, Matching(c.edge_ids()));
  }
  if (!is_b_matching(instance, cur)) return "matching after cycles is not a B-matching";
  long d = dist(g, cur, n);
  for (std::size_t i = 0; i < seq.seq.size(); ++i) {
    const CanonicalPath& s = seq.seq[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    if (!is_canonical(instance, cur, s)) return at + "not canonical";
    if (!cover(s.edges().edges())) return at + "overlaps an earlier component";
    cur = apply(cur, s.edges());
    if (!is_b_matching(instance, cur)) return at + "intermediate is not a B-matching";
    const long next = dist(g, cur, n);
    if (next >= d) return at + "dist did not decrease";
    d = next;
  }
  if (Matching(std::vector<EdgeId>(covered.begin(), covered.end())) != symmetric_difference(m, n))
    return "components do not cover M + N exactly";
  if (cur != n) return "sequence does not end at N";
  return std::nullopt;
}

}  // namespace bmatch
