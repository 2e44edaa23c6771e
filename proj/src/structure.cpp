#include "bmatch/structure.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "bmatch/neighbourhood.hpp"

namespace bmatch {

std::vector<EdgeId> AlternatingWalk::edge_ids() const {
  std::vector<EdgeId> out;
  for (const auto& s : steps) out.push_back(s.edge);
  return out;
}

AlternatingWalk AlternatingWalk::reversed() const {
  AlternatingWalk r;
  r.kind = kind;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.steps.push_back({it->edge, it->to, it->from});
  return r;
}

bool is_alternating(const MultiGraph& g, const Matching& m, const AlternatingWalk& walk) {
  if (walk.steps.empty()) return false;
  std::set<EdgeId> seen;
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    const WalkStep& s = walk.steps[i];
    if (s.edge >= g.edge_count()) return false;
    const Edge& e = g.edge(s.edge);
    if (!((e.u == s.from && e.v == s.to) || (e.v == s.from && e.u == s.to))) return false;
    if (!seen.insert(s.edge).second) return false;
    if (i > 0) {
      if (walk.steps[i - 1].to != s.from) return false;
      if (m.contains(walk.steps[i - 1].edge) == m.contains(s.edge)) return false;
    }
  }
  const bool first_in = m.contains(walk.steps.front().edge);
  const bool last_in = m.contains(walk.steps.back().edge);
  if (walk.kind == AlternatingWalk::Kind::Cycle) return walk.end() == walk.start() && first_in && !last_in;
  if (walk.end() == walk.start()) return first_in == last_in;
  return true;
}

namespace {

// Edge-end 2e sits at edge(e).u, 2e+1 at edge(e).v.
Vertex end_vertex(const MultiGraph& g, std::size_t end) {
  const Edge& e = g.edge(end / 2);
  return end % 2 == 0 ? e.u : e.v;
}

struct Traced {
  std::vector<AlternatingWalk> paths;
  std::vector<AlternatingWalk> cycles;
};

// Follows `partner` links over the ends of `s`. Paths start at unpaired ends
// (lowest first); whatever remains closes into cycles, each started on its
// lowest M edge.
Traced trace(const MultiGraph& g, const Matching& m, const Matching& s, const std::vector<long>& partner,
             bool want_cycles) {
  Traced out;
  std::vector<char> used(g.edge_count(), 0);
  auto walk_from = [&](std::size_t start, bool closed) {
    AlternatingWalk w;
    w.kind = closed ? AlternatingWalk::Kind::Cycle : AlternatingWalk::Kind::Path;
    std::size_t cur = start;
    while (true) {
      const EdgeId e = cur / 2;
      used[e] = 1;
      w.steps.push_back({e, end_vertex(g, cur), end_vertex(g, cur ^ 1)});
      const long next = partner[cur ^ 1];
      if (next < 0) break;
      cur = static_cast<std::size_t>(next);
      if (closed && cur == start) break;
    }
    return w;
  };
  for (EdgeId e : s.edges()) {
    for (std::size_t end : {2 * e, 2 * e + 1}) {
      if (partner[end] < 0 && !used[e]) out.paths.push_back(walk_from(end, false));
    }
  }
  for (EdgeId e : s.edges()) {
    if (used[e]) continue;
    if (!want_cycles) {
      out.cycles.emplace_back();
      return out;
    }
    if (!m.contains(e)) continue;
    out.cycles.push_back(walk_from(2 * e, true));
  }
  for (EdgeId e : s.edges())
    if (!used[e]) throw Error("decomposition left an edge untraced");
  return out;
}

struct EndLists {
  std::vector<std::vector<std::size_t>> in_m;   // per vertex, ends of S edges in M
  std::vector<std::vector<std::size_t>> out_m;  // per vertex, ends of S edges outside M
};

EndLists end_lists(const MultiGraph& g, const Matching& m, const Matching& s) {
  EndLists l;
  l.in_m.resize(g.vertex_count());
  l.out_m.resize(g.vertex_count());
  for (EdgeId e : s.edges()) {
    auto& list = m.contains(e) ? l.in_m : l.out_m;
    list[g.edge(e).u].push_back(2 * e);
    list[g.edge(e).v].push_back(2 * e + 1);
  }
  return l;
}

std::vector<int> degree_change(const MultiGraph& g, const Matching& m, const Matching& s) {
  std::vector<int> delta(g.vertex_count(), 0);
  for (EdgeId e : s.edges()) {
    const int sign = m.contains(e) ? -1 : 1;
    delta[g.edge(e).u] += sign;
    delta[g.edge(e).v] += sign;
  }
  return delta;
}

Matching union_of(const std::vector<AlternatingWalk>& walks) {
  std::vector<EdgeId> edges;
  for (const auto& w : walks)
    for (const auto& s : w.steps) edges.push_back(s.edge);
  return Matching(std::move(edges));
}

}  // namespace

Decomposition decompose_edges(const MultiGraph& g, const Matching& m, const Matching& s) {
  check_edges(g, s);
  const EndLists l = end_lists(g, m, s);
  std::vector<long> partner(2 * g.edge_count(), -1);
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const std::size_t k = std::min(l.in_m[x].size(), l.out_m[x].size());
    for (std::size_t i = 0; i < k; ++i) {
      partner[l.in_m[x][i]] = static_cast<long>(l.out_m[x][i]);
      partner[l.out_m[x][i]] = static_cast<long>(l.in_m[x][i]);
    }
  }
  Traced t = trace(g, m, s, partner, true);
  return {std::move(t.paths), std::move(t.cycles)};
}

Decomposition decompose_symmetric_difference(const BInstance& instance, const Matching& m, const Matching& n) {
  if (!is_b_matching(instance, m) || !is_b_matching(instance, n))
    throw NotFeasible("decomposition needs two B-matchings");
  return decompose_edges(instance.graph, m, symmetric_difference(m, n));
}

Matching apply(const Matching& m, const Matching& s) { return symmetric_difference(m, s); }

Weight edge_gain(const BInstance& instance, EdgeId e) {
  return objective_gain(instance.objective, instance.graph.edge(e));
}

Weight weight_of(const BInstance& instance, const Matching& m, const Matching& s) {
  Weight w = 0;
  for (EdgeId e : s.edges()) {
    const Weight g = edge_gain(instance, e);
    w = m.contains(e) ? checked_sub(w, g) : checked_add(w, g);
  }
  return w;
}

long dist(const MultiGraph& g, const Matching& m, const Matching& n) {
  const auto dm = degrees(g, m);
  const auto dn = degrees(g, n);
  long total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) total += std::abs(dn[v] - dm[v]);
  return total;
}

bool is_same_uniform_type(const BInstance& instance, const Matching& m, const Matching& n) {
  const auto w = neighbouring_set(instance, m, n);
  return w && w->empty();
}

std::optional<std::vector<Vertex>> neighbouring_set(const BInstance& instance, const Matching& m,
                                                    const Matching& n) {
  if (!is_b_matching(instance, m) || !is_b_matching(instance, n)) return std::nullopt;
  const auto dm = degrees(instance.graph, m);
  const auto dn = degrees(instance.graph, n);
  std::vector<Vertex> w;
  std::vector<long> step;
  for (Vertex v = 0; v < instance.vertex_count(); ++v) {
    const auto& b = instance.degree_sets[v];
    const long diff = static_cast<long>(interval_index(b, dn[v])) - static_cast<long>(interval_index(b, dm[v]));
    if (diff != 0) {
      w.push_back(v);
      step.push_back(std::abs(diff));
      if (w.size() > 2) return std::nullopt;
    }
  }
  // Consecutive parity intervals always touch (hi + 1 == lo of the next), so
  // adjacency is an index difference of one.
  if (w.size() == 2 && (step[0] != 1 || step[1] != 1)) return std::nullopt;
  if (w.size() == 1 && step[0] != 2) return std::nullopt;
  return w;
}

bool is_neighbouring_type(const BInstance& instance, const Matching& m, const Matching& n) {
  return neighbouring_set(instance, m, n).has_value();
}

std::vector<Vertex> MetaWalk::junctions() const {
  std::vector<Vertex> out;
  for (const auto& p : parts) out.push_back(p.start());
  if (end() != start()) out.push_back(end());
  return out;
}

std::vector<EdgeId> MetaWalk::edge_ids() const {
  std::vector<EdgeId> out;
  for (const auto& p : parts)
    for (const auto& s : p.steps) out.push_back(s.edge);
  return out;
}

std::vector<AlternatingWalk> CanonicalPath::parts() const {
  std::vector<AlternatingWalk> out;
  if (path) out.insert(out.end(), path->parts.begin(), path->parts.end());
  for (const auto* list : {&cycles_first, &cycles_last})
    for (const auto& c : *list) out.insert(out.end(), c.parts.begin(), c.parts.end());
  return out;
}

Matching CanonicalPath::edges() const { return union_of(parts()); }

std::size_t CanonicalPath::component_count() const { return parts().size(); }

namespace {

bool well_formed(const MetaWalk& w, bool closed) {
  if (w.parts.empty()) return false;
  for (std::size_t i = 0; i + 1 < w.parts.size(); ++i)
    if (w.parts[i].end() != w.parts[i + 1].start()) return false;
  if (closed != (w.end() == w.start())) return false;
  auto j = w.junctions();
  std::sort(j.begin(), j.end());
  return std::adjacent_find(j.begin(), j.end()) == j.end();
}

// Every path end at a vertex has the same membership in M.
bool ends_consistent(const MultiGraph& g, const Matching& m, const std::vector<AlternatingWalk>& parts) {
  std::map<Vertex, bool> kind;
  for (const auto& p : parts) {
    const std::pair<Vertex, EdgeId> ends[2] = {{p.start(), p.steps.front().edge}, {p.end(), p.steps.back().edge}};
    for (const auto& [v, e] : ends) {
      const bool in = m.contains(e);
      auto [it, fresh] = kind.emplace(v, in);
      if (!fresh && it->second != in) return false;
    }
  }
  (void)g;
  return true;
}

}  // namespace

bool is_canonical(const BInstance& instance, const Matching& m, const CanonicalPath& s) {
  const MultiGraph& g = instance.graph;
  if (s.path) {
    if (s.first == s.last || !well_formed(*s.path, false)) return false;
    if (s.path->start() != s.first || s.path->end() != s.last) return false;
  } else if (s.first != s.last) {
    return false;
  }
  for (const auto& c : s.cycles_first)
    if (!well_formed(c, true) || c.start() != s.first) return false;
  for (const auto& c : s.cycles_last)
    if (!well_formed(c, true) || c.start() != s.last) return false;

  const auto parts = s.parts();
  if (parts.empty()) return false;
  std::size_t edge_total = 0;
  for (const auto& p : parts) {
    if (p.kind != AlternatingWalk::Kind::Path || !is_alternating(g, m, p)) return false;
    edge_total += p.steps.size();
  }
  const Matching edges = union_of(parts);
  if (edges.size() != edge_total) return false;
  if (!ends_consistent(g, m, parts)) return false;
  return is_neighbouring_type(instance, m, apply(m, edges));
}

namespace {

struct HEdge {
  Vertex a, b;
};

class Arranger {
 public:
  Arranger(const std::vector<AlternatingWalk>& paths) : paths_(paths) {
    for (const auto& p : paths) h_.push_back({p.start(), p.end()});
    used_.assign(h_.size(), false);
  }

  std::optional<CanonicalPath> run() {
    std::map<Vertex, int> deg;
    for (const auto& e : h_) {
      ++deg[e.a];
      ++deg[e.b];
    }
    std::vector<Vertex> odd;
    for (const auto& [v, d] : deg)
      if (d % 2 != 0) odd.push_back(v);
    if (odd.size() == 2) return with_endpoints(odd[0], odd[1]);
    if (!odd.empty()) return std::nullopt;
    for (const auto& [v, d] : deg) {
      (void)d;
      if (auto r = with_endpoints(v, v)) return r;
    }
    return std::nullopt;
  }

 private:
  std::optional<CanonicalPath> with_endpoints(Vertex x, Vertex y) {
    x_ = x;
    y_ = y;
    std::fill(used_.begin(), used_.end(), false);
    meta_path_.clear();
    cycles_.clear();
    if (x == y) {
      if (!decompose_cycles()) return std::nullopt;
    } else {
      std::set<Vertex> visited{x};
      if (!find_path(x, visited)) return std::nullopt;
    }
    return build();
  }

  bool find_path(Vertex at, std::set<Vertex>& visited) {
    for (std::size_t i = 0; i < h_.size(); ++i) {
      if (used_[i] || h_[i].a == h_[i].b) continue;
      if (h_[i].a != at && h_[i].b != at) continue;
      const Vertex next = h_[i].a == at ? h_[i].b : h_[i].a;
      if (visited.count(next)) continue;
      used_[i] = true;
      meta_path_.push_back({i, h_[i].a != at});
      if (next == y_) {
        if (decompose_cycles()) return true;
      } else {
        visited.insert(next);
        if (find_path(next, visited)) return true;
        visited.erase(next);
      }
      meta_path_.pop_back();
      used_[i] = false;
    }
    return false;
  }

  bool decompose_cycles() {
    std::size_t first = h_.size();
    for (std::size_t i = 0; i < h_.size(); ++i)
      if (!used_[i]) {
        first = i;
        break;
      }
    if (first == h_.size()) return true;
    const HEdge e = h_[first];
    used_[first] = true;
    std::vector<std::pair<std::size_t, bool>> cycle{{first, false}};
    if (e.a == e.b) {
      if (e.a == x_ || e.a == y_) {
        cycles_.push_back(cycle);
        if (decompose_cycles()) return true;
        cycles_.pop_back();
      }
    } else {
      std::set<Vertex> visited{e.a, e.b};
      if (close_cycle(e.b, e.a, cycle, visited)) return true;
    }
    used_[first] = false;
    return false;
  }

  // Extends the open cycle from `at` back to `home` over unused H-edges.
  bool close_cycle(Vertex at, Vertex home, std::vector<std::pair<std::size_t, bool>>& cycle,
                   std::set<Vertex>& visited) {
    for (std::size_t i = 0; i < h_.size(); ++i) {
      if (used_[i] || h_[i].a == h_[i].b) continue;
      if (h_[i].a != at && h_[i].b != at) continue;
      const Vertex next = h_[i].a == at ? h_[i].b : h_[i].a;
      if (next != home && visited.count(next)) continue;
      used_[i] = true;
      cycle.push_back({i, h_[i].a != at});
      if (next == home) {
        if (visited.count(x_) || visited.count(y_)) {
          cycles_.push_back(cycle);
          if (decompose_cycles()) return true;
          cycles_.pop_back();
        }
      } else {
        visited.insert(next);
        if (close_cycle(next, home, cycle, visited)) return true;
        visited.erase(next);
      }
      cycle.pop_back();
      used_[i] = false;
    }
    return false;
  }

  AlternatingWalk oriented(std::size_t i, bool reverse) const {
    return reverse ? paths_[i].reversed() : paths_[i];
  }

  CanonicalPath build() const {
    CanonicalPath s;
    s.first = x_;
    s.last = y_;
    if (x_ != y_) {
      MetaWalk p;
      for (auto [i, rev] : meta_path_) p.parts.push_back(oriented(i, rev));
      s.path = std::move(p);
    }
    for (const auto& c : cycles_) {
      MetaWalk w;
      for (auto [i, rev] : c) w.parts.push_back(oriented(i, rev));
      // Rotate to start at the endpoint it is attached to.
      const auto j = w.junctions();
      const Vertex anchor = std::find(j.begin(), j.end(), x_) != j.end() ? x_ : y_;
      auto it = std::find_if(w.parts.begin(), w.parts.end(), [&](const auto& part) { return part.start() == anchor; });
      std::rotate(w.parts.begin(), it, w.parts.end());
      (anchor == x_ ? s.cycles_first : s.cycles_last).push_back(std::move(w));
    }
    return s;
  }

  const std::vector<AlternatingWalk>& paths_;
  std::vector<HEdge> h_;
  std::vector<bool> used_;
  Vertex x_ = 0, y_ = 0;
  std::vector<std::pair<std::size_t, bool>> meta_path_;
  std::vector<std::vector<std::pair<std::size_t, bool>>> cycles_;
};

}  // namespace

std::optional<CanonicalPath> arrange(const BInstance& instance, const Matching& m,
                                     const std::vector<AlternatingWalk>& paths) {
  if (paths.empty()) return std::nullopt;
  const Matching edges = union_of(paths);
  if (!is_neighbouring_type(instance, m, apply(m, edges))) return std::nullopt;
  for (const auto& p : paths)
    if (p.kind != AlternatingWalk::Kind::Path || !is_alternating(instance.graph, m, p)) return std::nullopt;
  if (!ends_consistent(instance.graph, m, paths)) return std::nullopt;
  auto s = Arranger(paths).run();
  if (s && !is_canonical(instance, m, *s)) throw Error("arrangement failed its own canonical check");
  return s;
}

namespace {

constexpr std::size_t kPairingBudget = 200000;

}  // namespace

std::optional<CanonicalPath> canonical_structure(const BInstance& instance, const Matching& m, const Matching& s) {
  if (s.empty()) return std::nullopt;
  const MultiGraph& g = instance.graph;
  check_edges(g, s);
  if (!is_neighbouring_type(instance, m, apply(m, s))) return std::nullopt;
  const auto delta = degree_change(g, m, s);
  if (std::count_if(delta.begin(), delta.end(), [](int d) { return d % 2 != 0; }) > 2) return std::nullopt;

  const EndLists l = end_lists(g, m, s);
  std::vector<Vertex> touched;
  for (Vertex x = 0; x < g.vertex_count(); ++x)
    if (!l.in_m[x].empty() && !l.out_m[x].empty()) touched.push_back(x);

  std::vector<long> partner(2 * g.edge_count(), -1);
  std::size_t tried = 0;
  std::optional<CanonicalPath> found;

  // Pairs each minority end at touched[vi] (from position k) with a distinct
  // unpaired majority end.
  std::function<bool(std::size_t, std::size_t)> pair_up = [&](std::size_t vi, std::size_t k) -> bool {
    if (vi == touched.size()) {
      if (++tried > kPairingBudget) throw TooLarge("canonical structure search exceeded its pairing budget");
      Traced t = trace(g, m, s, partner, false);
      if (!t.cycles.empty()) return false;
      found = arrange(instance, m, t.paths);
      return found.has_value();
    }
    const Vertex x = touched[vi];
    const bool in_minor = l.in_m[x].size() <= l.out_m[x].size();
    const auto& minor = in_minor ? l.in_m[x] : l.out_m[x];
    const auto& major = in_minor ? l.out_m[x] : l.in_m[x];
    if (k == minor.size()) return pair_up(vi + 1, 0);
    for (std::size_t cand : major) {
      if (partner[cand] >= 0) continue;
      partner[cand] = static_cast<long>(minor[k]);
      partner[minor[k]] = static_cast<long>(cand);
      if (pair_up(vi, k + 1)) return true;
      partner[cand] = -1;
      partner[minor[k]] = -1;
    }
    return false;
  };
  pair_up(0, 0);
  return found;
}

bool is_canonical(const BInstance& instance, const Matching& m, const Matching& s) {
  return canonical_structure(instance, m, s).has_value();
}

namespace {

// Canonical subsets of a fixed unit list (paths or edges), keyed by mask.
class SubsetFamily {
 public:
  SubsetFamily(const BInstance& instance, const Matching& m, const CanonicalPath& s, BasicGranularity g)
      : instance_(instance), m_(m), granularity_(g), parts_(s.parts()), edges_(s.edges().edges()) {
    const std::size_t units = g == BasicGranularity::Components ? parts_.size() : edges_.size();
    const std::size_t limit = g == BasicGranularity::Components ? 20 : 16;
    if (units > limit) throw TooLarge("too many units for subset search");
    units_ = units;
  }

  std::size_t units() const { return units_; }
  unsigned long full() const { return (1ul << units_) - 1; }

  const std::optional<CanonicalPath>& canonical(unsigned long mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    std::optional<CanonicalPath> r;
    if (granularity_ == BasicGranularity::Components) {
      std::vector<AlternatingWalk> sel;
      for (std::size_t i = 0; i < units_; ++i)
        if (mask >> i & 1) sel.push_back(parts_[i]);
      r = arrange(instance_, m_, sel);
    } else {
      r = canonical_structure(instance_, m_, edges_of(mask));
    }
    return cache_.emplace(mask, std::move(r)).first->second;
  }

  Matching edges_of(unsigned long mask) const {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < units_; ++i) {
      if (!(mask >> i & 1)) continue;
      if (granularity_ == BasicGranularity::Components) {
        for (const auto& st : parts_[i].steps) out.push_back(st.edge);
      } else {
        out.push_back(edges_[i]);
      }
    }
    return Matching(std::move(out));
  }

  Weight weight(unsigned long mask) const { return weight_of(instance_, m_, edges_of(mask)); }

  // First proper canonical submask of X (fewest units, then lowest mask)
  // with weight >= wx or > 0.
  std::optional<unsigned long> offender(unsigned long x, Weight wx) {
    std::optional<unsigned long> best;
    for (unsigned long y = (x - 1) & x; y != 0; y = (y - 1) & x) {
      if (best && (std::popcount(y) > std::popcount(*best) ||
                   (std::popcount(y) == std::popcount(*best) && y > *best)))
        continue;
      if (!canonical(y)) continue;
      const Weight wy = weight(y);
      if (wy >= wx || wy > 0) best = y;
    }
    return best;
  }

 private:
  const BInstance& instance_;
  const Matching& m_;
  BasicGranularity granularity_;
  std::vector<AlternatingWalk> parts_;
  std::vector<EdgeId> edges_;
  std::size_t units_ = 0;
  std::map<unsigned long, std::optional<CanonicalPath>> cache_;
};

}  // namespace

CanonicalPath make_basic(const BInstance& instance, const Matching& m, const CanonicalPath& s,
                         BasicGranularity granularity) {
  SubsetFamily family(instance, m, s, granularity);
  unsigned long x = family.full();
  bool moved = false;
  while (auto y = family.offender(x, family.weight(x))) {
    x = *y;
    moved = true;
  }
  if (!moved) return s;
  return *family.canonical(x);
}

bool is_basic(const BInstance& instance, const Matching& m, const CanonicalPath& s, BasicGranularity granularity) {
  SubsetFamily family(instance, m, s, granularity);
  return !family.offender(family.full(), family.weight(family.full()));
}

CanonicalSequence extract_canonical_sequence(const BInstance& instance, const Matching& m, const Matching& n) {
  const MultiGraph& g = instance.graph;
  const Decomposition dec = decompose_symmetric_difference(instance, m, n);
  CanonicalSequence out;
  out.cycles = dec.cycles;
  Matching cur = apply(m, union_of(dec.cycles));
  std::vector<AlternatingWalk> remaining = dec.paths;

  while (!remaining.empty()) {
    std::vector<std::size_t> chosen{0};
    auto selection = [&](const std::vector<std::size_t>& idx) {
      std::vector<AlternatingWalk> sel;
      for (std::size_t i : idx) sel.push_back(remaining[i]);
      return sel;
    };

    std::optional<CanonicalPath> candidate;
    while (!(candidate = arrange(instance, cur, selection(chosen)))) {
      // Wrong vertices: touched ends whose degree after applying is not allowed.
      const auto dcur = degrees(g, cur);
      std::map<Vertex, int> change;
      for (std::size_t i : chosen) {
        const auto& p = remaining[i];
        change[p.start()] += cur.contains(p.steps.front().edge) ? -1 : 1;
        change[p.end()] += cur.contains(p.steps.back().edge) ? -1 : 1;
      }
      std::optional<std::size_t> extension;
      for (const auto& [x, c] : change) {
        if (instance.degree_sets[x].contains(dcur[x] + c)) continue;
        for (std::size_t i = 0; i < remaining.size() && !extension; ++i) {
          if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
          if (remaining[i].start() == x || remaining[i].end() == x) extension = i;
        }
        if (extension) break;
      }
      if (!extension) break;
      chosen.push_back(*extension);
    }

    if (!candidate) {
      // Growth stalled; fall back to the first canonical union of remaining
      // paths by size.
      if (remaining.size() > 20) throw TooLarge("too many alternating paths for the fallback search");
      const unsigned long full = (1ul << remaining.size()) - 1;
      std::vector<unsigned long> masks;
      for (unsigned long x = 1; x <= full; ++x) masks.push_back(x);
      std::stable_sort(masks.begin(), masks.end(),
                       [](unsigned long a, unsigned long b) { return std::popcount(a) < std::popcount(b); });
      for (unsigned long x : masks) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (x >> i & 1) idx.push_back(i);
        if ((candidate = arrange(instance, cur, selection(idx)))) break;
      }
      if (!candidate) throw Error("no canonical path in the remaining symmetric difference");
    }

    CanonicalPath basic = make_basic(instance, cur, *candidate, BasicGranularity::Components);
    const Matching used = basic.edges();
    cur = apply(cur, used);
    std::erase_if(remaining, [&](const AlternatingWalk& p) { return used.contains(p.steps.front().edge); });
    out.seq.push_back(std::move(basic));
  }
  if (cur != n) throw Error("canonical sequence does not end at N");
  return out;
}

ClassifyReport classify(const BInstance& instance, const Matching& m, const CanonicalPath& s) {
  const MultiGraph& g = instance.graph;
  const Matching edges = s.edges();
  const Weight total = weight_of(instance, m, edges);

  std::vector<MetaWalk> cycles = s.cycles_first;
  cycles.insert(cycles.end(), s.cycles_last.begin(), s.cycles_last.end());
  auto cheap_offender = [&](const std::vector<AlternatingWalk>& parts) {
    if (parts.empty() || parts.size() == s.component_count()) return false;
    if (!arrange(instance, m, parts)) return false;
    const Weight w = weight_of(instance, m, union_of(parts));
    return w >= total || w > 0;
  };
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    std::vector<AlternatingWalk> rest;
    if (s.path) rest = s.path->parts;
    for (std::size_t j = 0; j < cycles.size(); ++j)
      if (j != i) rest.insert(rest.end(), cycles[j].parts.begin(), cycles[j].parts.end());
    if (cheap_offender(cycles[i].parts) || cheap_offender(rest))
      throw NotBasic("a single meta-cycle or its complement is a better canonical subset");
  }

  const auto dm = degrees(g, m);
  const auto delta = degree_change(g, m, edges);
  auto allows = [&](Vertex x, int r) {
    const int sign = delta[x] < 0 ? -1 : 1;
    return instance.degree_sets[x].contains(dm[x] + sign * r);
  };
  auto is_odd = [&](Vertex x) { return allows(x, 1); };

  ClassifyReport report;
  auto fail = [&](const std::string& what) { report.violations.push_back(what); };

  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (x == s.first || x == s.last) continue;
    for (int r = 0; r <= std::abs(delta[x]); r += 2)
      if (!allows(x, r)) fail("internal vertex " + std::to_string(x) + " lacks relative degree " + std::to_string(r));
  }

  if (s.first != s.last) {
    for (Vertex u : {s.first, s.last}) {
      const int change = std::abs(delta[u]);
      report.endpoints.push_back({u, is_odd(u), change});
      bool ok = allows(u, 0);
      if (is_odd(u)) {
        for (int r = 1; r <= change; r += 2) ok = ok && allows(u, r);
      } else {
        for (int r = 2; r <= change - 1; r += 2) ok = ok && allows(u, r);
        ok = ok && allows(u, change);
      }
      if (!ok) fail(std::string(is_odd(u) ? "odd" : "even") + " endpoint " + std::to_string(u) +
                    " lacks its required relative degrees");
    }
    for (const auto& c : cycles) {
      const auto j = c.junctions();
      const bool at_first = std::find(j.begin(), j.end(), s.first) != j.end();
      const bool at_last = std::find(j.begin(), j.end(), s.last) != j.end();
      const Weight w = weight_of(instance, m, Matching(c.edge_ids()));
      if (at_first && at_last) {
        if (is_odd(s.first) == is_odd(s.last))
          fail("meta-cycle through both endpoints but endpoints have equal parity type");
      } else {
        const Vertex u = at_first ? s.first : s.last;
        if (is_odd(u) && w <= 0) fail("nonpositive meta-cycle at odd endpoint " + std::to_string(u));
        if (!is_odd(u) && w > 0) fail("positive meta-cycle at even endpoint " + std::to_string(u));
      }
    }
  } else {
    const Vertex u = s.first;
    const int change = std::abs(delta[u]);
    report.endpoints.push_back({u, is_odd(u), change});
    const bool single = cycles.size() == 1 && allows(u, 0) && allows(u, 2);
    bool spread = allows(u, 0) && allows(u, change);
    for (int r = 1; r <= change - 1; r += 2) spread = spread && allows(u, r);
    if (!single && !spread) fail("closed canonical path at " + std::to_string(u) + " is neither a single meta-cycle nor spread");
  }
  return report;
}

}  // namespace bmatch
