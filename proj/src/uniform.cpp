#include "bmatch/uniform.hpp"

namespace bmatch {

std::optional<Matching> solve_ab(const ABInstance& ab) {
  const GadgetGraph gadget = ab_to_pm(ab);
  const auto pm = max_weight_perfect_matching(gadget.graph);
  if (!pm) return std::nullopt;
  return lift(gadget.lift, pm->edges);
}

std::optional<Matching> solve_uniform(const BInstance& instance, const UniformSpec& spec) {
  MultiGraph weighted(instance.vertex_count());
  for (const Edge& e : instance.graph.edges()) weighted.add_edge(e.u, e.v, objective_gain(instance.objective, e));

  auto [ab, to_source] = uniform_to_ab(weighted, spec);
  const auto on_ab = solve_ab(ab);
  if (!on_ab) return std::nullopt;
  Matching f = lift(to_source, on_ab->edges());

  const auto d = degrees(instance.graph, f);
  for (Vertex v = 0; v < instance.vertex_count(); ++v)
    if (!spec[v].allows(d[v])) throw Error("uniform solve produced a matching outside the spec");
  return f;
}

}  // namespace bmatch
