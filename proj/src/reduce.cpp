#include "bmatch/reduce.hpp"

#include <algorithm>
#include <map>

namespace bmatch {

bool UniformVertexSpec::allows(int k) const {
  if (k < lo || k > hi) return false;
  return kind == Kind::Interval || (k - lo) % 2 == 0;
}

DegreeSet UniformVertexSpec::values() const {
  return kind == Kind::Interval ? DegreeSet::interval(lo, hi) : DegreeSet::parity(lo, hi);
}

Matching lift(const LiftMap& map, std::span<const EdgeId> solution) {
  std::vector<EdgeId> out;
  for (EdgeId e : solution)
    if (map.origin.at(e)) out.push_back(*map.origin[e]);
  return Matching(std::move(out));
}

LiftMap compose(const LiftMap& outer, const LiftMap& inner) {
  LiftMap out;
  out.origin.reserve(outer.origin.size());
  for (const auto& mid : outer.origin) out.origin.push_back(mid ? inner.origin.at(*mid) : std::nullopt);
  return out;
}

void check_spec(const MultiGraph& g, const UniformSpec& spec) {
  if (spec.size() != g.vertex_count()) throw BadSpec("spec size differs from vertex count");
  const auto deg = g.degrees();
  for (Vertex v = 0; v < spec.size(); ++v) {
    const auto& s = spec[v];
    const std::string where = " at vertex " + std::to_string(v);
    if (s.lo < 0 || s.lo > s.hi || s.hi > deg[v]) throw BadSpec("bounds out of range" + where);
    if (s.kind == UniformVertexSpec::Kind::Parity && (s.hi - s.lo) % 2 != 0)
      throw BadSpec("parity bounds mismatched" + where);
  }
}

std::pair<ABInstance, LiftMap> uniform_to_ab(const MultiGraph& g, const UniformSpec& spec) {
  check_spec(g, spec);
  ABInstance ab;
  ab.graph = MultiGraph(g.vertex_count());
  LiftMap map;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    ab.graph.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).w);
    map.origin.push_back(e);
  }
  ab.a.resize(g.vertex_count());
  ab.b.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& s = spec[v];
    if (s.kind == UniformVertexSpec::Kind::Interval) {
      ab.a[v] = s.lo;
      ab.b[v] = s.hi;
    } else {
      for (int i = 0; i < (s.hi - s.lo) / 2; ++i) {
        ab.graph.add_edge(v, v, 0);
        map.origin.push_back(std::nullopt);
      }
      ab.a[v] = ab.b[v] = s.hi;
    }
  }
  return {std::move(ab), std::move(map)};
}

GadgetGraph ab_to_pm(const ABInstance& ab) {
  const MultiGraph& g = ab.graph;
  const std::size_t n = g.vertex_count();
  if (ab.a.size() != n || ab.b.size() != n) throw BoundsError("bound vectors differ from vertex count");
  const auto deg = g.degrees();
  for (Vertex v = 0; v < n; ++v) {
    if (ab.a[v] < 0 || ab.a[v] > ab.b[v] || ab.b[v] > deg[v])
      throw BoundsError("need 0 <= a <= b <= d at vertex " + std::to_string(v));
  }

  GadgetGraph out;
  auto& nodes = out.nodes;
  auto& edges = out.graph.edges;
  std::vector<std::vector<std::size_t>> externals(n);

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const std::size_t x = nodes.size();
    nodes.push_back({GadgetRole::External, g.edge(e).u});
    nodes.push_back({GadgetRole::External, g.edge(e).v});
    externals[g.edge(e).u].push_back(x);
    externals[g.edge(e).v].push_back(x + 1);
    out.external_of_edge.emplace_back(x, x + 1);
    edges.push_back({x, x + 1, g.edge(e).w});
    out.lift.origin.push_back(e);
  }

  std::vector<std::size_t> pool_internals;
  long slack_total = 0;
  long b_total = 0;
  for (Vertex v = 0; v < n; ++v) {
    const int internal_count = deg[v] - ab.a[v];
    const int pooled = ab.b[v] - ab.a[v];
    slack_total += pooled;
    b_total += ab.b[v];
    for (int i = 0; i < internal_count; ++i) {
      const std::size_t y = nodes.size();
      const bool is_pooled = i < pooled;
      nodes.push_back({is_pooled ? GadgetRole::PoolInternal : GadgetRole::Internal, v});
      if (is_pooled) pool_internals.push_back(y);
      for (std::size_t x : externals[v]) {
        edges.push_back({x, y, 0});
        out.lift.origin.push_back(std::nullopt);
      }
    }
  }

  const long pool_size = slack_total + (b_total % 2);
  const std::size_t pool_first = nodes.size();
  for (long i = 0; i < pool_size; ++i) nodes.push_back({GadgetRole::Pool, 0});
  for (std::size_t y : pool_internals) {
    for (long i = 0; i < pool_size; ++i) {
      edges.push_back({y, pool_first + i, 0});
      out.lift.origin.push_back(std::nullopt);
    }
  }
  for (long i = 0; i < pool_size; ++i) {
    for (long j = i + 1; j < pool_size; ++j) {
      edges.push_back({pool_first + i, pool_first + j, 0});
      out.lift.origin.push_back(std::nullopt);
    }
  }
  out.graph.vertex_count = nodes.size();
  return out;
}

std::vector<EdgeId> embed(const ABInstance& ab, const GadgetGraph& gadget, const Matching& f) {
  const MultiGraph& g = ab.graph;
  const std::size_t n = g.vertex_count();
  const auto d = degrees(g, f);
  for (Vertex v = 0; v < n; ++v)
    if (d[v] < ab.a[v] || d[v] > ab.b[v]) throw NotFeasible("matching violates bounds at vertex " + std::to_string(v));

  std::map<std::pair<std::size_t, std::size_t>, EdgeId> index;
  for (EdgeId e = 0; e < gadget.graph.edges.size(); ++e)
    index[std::minmax(gadget.graph.edges[e].u, gadget.graph.edges[e].v)] = e;
  std::vector<EdgeId> pm;
  auto join = [&](std::size_t x, std::size_t y) { pm.push_back(index.at(std::minmax(x, y))); };

  std::vector<std::vector<std::size_t>> free_externals(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [x, y] = gadget.external_of_edge[e];
    if (f.contains(e)) {
      join(x, y);
    } else {
      free_externals[g.edge(e).u].push_back(x);
      free_externals[g.edge(e).v].push_back(y);
    }
  }
  std::vector<std::vector<std::size_t>> plain(n), pooled(n);
  std::vector<std::size_t> pool;
  for (std::size_t y = 0; y < gadget.nodes.size(); ++y) {
    const auto& node = gadget.nodes[y];
    if (node.role == GadgetRole::Internal) plain[node.owner].push_back(y);
    if (node.role == GadgetRole::PoolInternal) pooled[node.owner].push_back(y);
    if (node.role == GadgetRole::Pool) pool.push_back(y);
  }
  std::size_t next_pool = 0;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<std::size_t> internals = plain[v];
    internals.insert(internals.end(), pooled[v].begin(), pooled[v].end());
    std::size_t i = 0;
    for (std::size_t x : free_externals[v]) join(x, internals[i++]);
    for (; i < internals.size(); ++i) join(internals[i], pool.at(next_pool++));
  }
  for (; next_pool + 1 < pool.size(); next_pool += 2) join(pool[next_pool], pool[next_pool + 1]);
  std::sort(pm.begin(), pm.end());
  return pm;
}

std::size_t pool_internal_pairs(const GadgetGraph& gadget, std::span<const EdgeId> pm) {
  std::size_t count = 0;
  for (EdgeId e : pm) {
    const auto ru = gadget.nodes[gadget.graph.edges[e].u].role;
    const auto rv = gadget.nodes[gadget.graph.edges[e].v].role;
    if ((ru == GadgetRole::Pool) != (rv == GadgetRole::Pool)) ++count;
  }
  return count;
}

}  // namespace bmatch
