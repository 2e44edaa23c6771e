#include "bmatch/neighbourhood.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "bmatch/uniform.hpp"

namespace bmatch {

TypeAssignment current_type(const BInstance& instance, const Matching& m) {
  check_edges(instance.graph, m);
  const auto d = degrees(instance.graph, m);
  TypeAssignment type(instance.vertex_count());
  for (Vertex v = 0; v < instance.vertex_count(); ++v) {
    if (!instance.degree_sets[v].contains(d[v]))
      throw NotFeasible("degree " + std::to_string(d[v]) + " not allowed at vertex " + std::to_string(v));
    type[v] = interval_index(instance.degree_sets[v], d[v]);
  }
  return type;
}

std::vector<CandidateType> enumerate_candidates(const BInstance& instance, const Matching& m) {
  const TypeAssignment type = current_type(instance, m);
  const std::size_t n = instance.vertex_count();
  std::vector<std::size_t> count(n);
  for (Vertex v = 0; v < n; ++v) count[v] = parity_intervals(instance.degree_sets[v]).size();
  auto exists = [&](Vertex v, int offset) {
    const long t = static_cast<long>(type[v]) + offset;
    return t >= 0 && t < static_cast<long>(count[v]);
  };

  std::vector<CandidateType> out;
  out.push_back({});
  for (Vertex v = 0; v < n; ++v)
    for (int offset : {-2, 2})
      if (exists(v, offset)) out.push_back({{{v, offset}}});
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w = v + 1; w < n; ++w) {
      for (int ov : {-1, 1})
        for (int ow : {-1, 1})
          if (exists(v, ov) && exists(w, ow)) out.push_back({{{v, ov}, {w, ow}}});
    }
  }
  return out;
}

UniformSpec candidate_spec(const BInstance& instance, const TypeAssignment& type, const CandidateType& candidate) {
  UniformSpec spec(instance.vertex_count());
  std::vector<long> index(type.begin(), type.end());
  for (const TypeChange& c : candidate.changes) index[c.vertex] += c.offset;
  for (Vertex v = 0; v < instance.vertex_count(); ++v) {
    const auto intervals = parity_intervals(instance.degree_sets[v]);
    if (index[v] < 0 || index[v] >= static_cast<long>(intervals.size()))
      throw Error("candidate refers to a nonexistent interval at vertex " + std::to_string(v));
    spec[v] = UniformVertexSpec::from(intervals[index[v]]);
  }
  return spec;
}

namespace {

Weight floor_half(Weight x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

// Each vertex contributes the best gain sum over its edge-ends under its
// degree bounds; every edge is counted at both ends, hence the halving.
class ObjectiveBound {
 public:
  explicit ObjectiveBound(const BInstance& instance) : gains_(instance.vertex_count()) {
    for (const Edge& e : instance.graph.edges()) {
      const Weight g = objective_gain(instance.objective, e);
      gains_[e.u].push_back(g);
      gains_[e.v].push_back(g);
    }
    for (auto& g : gains_) std::sort(g.begin(), g.end(), std::greater<>());
  }

  Weight operator()(const UniformSpec& spec) const {
    Weight total = 0;
    for (Vertex v = 0; v < spec.size(); ++v) {
      const auto& g = gains_[v];
      for (int i = 0; i < spec[v].hi && i < static_cast<int>(g.size()); ++i) {
        if (i >= spec[v].lo && g[i] <= 0) break;
        total = checked_add(total, g[i]);
      }
    }
    return floor_half(total);
  }

 private:
  std::vector<std::vector<Weight>> gains_;
};

}  // namespace

StepResult improvement_step(const BInstance& raw, const Matching& m, const SolveOptions& options) {
  const BInstance instance = normalized(raw);
  const TypeAssignment type = current_type(instance, m);
  const auto candidates = enumerate_candidates(instance, m);
  const Weight current = objective_value(instance, m);
  const ObjectiveBound bound(instance);

  StepResult result;
  result.candidates = candidates.size();

  struct Best {
    Weight value;
    std::size_t index;
    Matching matching;
  };
  std::optional<Best> best;
  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> solved{0};

  // Best improvement runs candidates in order of decreasing bound, so once
  // the bound drops below the incumbent everything after it is skipped; the
  // chosen candidate is the same as for a plain scan in index order. First
  // improvement keeps index order and stops at the earliest improving one.
  std::vector<Weight> ub(candidates.size(), std::numeric_limits<Weight>::max());
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    order[i] = i;
    if (options.prune) ub[i] = bound(candidate_spec(instance, type, candidates[i]));
  }
  if (!options.first_improvement)
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ub[a] > ub[b]; });

  auto work = [&] {
    for (std::size_t k = next++; k < order.size(); k = next++) {
      const std::size_t i = order[k];
      if (options.prune && ub[i] <= current) {
        if (options.first_improvement) continue;
        break;
      }
      {
        std::lock_guard lock(mutex);
        if (best && options.first_improvement && best->index < i) continue;
        if (best && options.prune && !options.first_improvement &&
            (ub[i] < best->value || (ub[i] == best->value && best->index < i)))
          continue;
      }
      const UniformSpec spec = candidate_spec(instance, type, candidates[i]);
      auto f = solve_uniform(instance, spec);
      ++solved;
      if (!f) continue;
      const Weight value = objective_value(instance, *f);
      if (value <= current) continue;
      std::lock_guard lock(mutex);
      const bool better = options.first_improvement
                              ? !best || i < best->index
                              : !best || value > best->value || (value == best->value && i < best->index);
      if (better) best = Best{value, i, std::move(*f)};
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
  }

  result.solved = solved;
  if (best) {
    if (!is_b_matching(instance, best->matching)) throw Error("candidate produced an infeasible matching");
    result.chosen = best->index;
    result.improved = std::move(best->matching);
  }
  return result;
}

std::optional<Matching> find_feasible(const BInstance& raw, std::uint64_t node_limit) {
  const BInstance instance = normalized(raw);
  const MultiGraph& g = instance.graph;
  const std::size_t n = g.vertex_count();
  if (std::all_of(instance.degree_sets.begin(), instance.degree_sets.end(),
                  [](const DegreeSet& b) { return b.contains(0); }))
    return Matching{};

  std::vector<EdgeId> order(g.edge_count());
  for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](EdgeId x, EdgeId y) {
    const auto kx = std::minmax(g.edge(x).u, g.edge(x).v);
    const auto ky = std::minmax(g.edge(y).u, g.edge(y).v);
    return kx < ky;
  });

  std::vector<int> cur(n, 0);
  std::vector<int> undecided = g.degrees();
  // next_allowed[v][k]: smallest allowed degree >= k, or a sentinel.
  std::vector<std::vector<int>> next_allowed(n);
  for (Vertex v = 0; v < n; ++v) {
    const int d = undecided[v];
    next_allowed[v].assign(d + 2, d + 1);
    for (int k = d; k >= 0; --k)
      next_allowed[v][k] = instance.degree_sets[v].contains(k) ? k : next_allowed[v][k + 1];
  }
  auto viable = [&](Vertex v) { return next_allowed[v][cur[v]] <= cur[v] + undecided[v]; };
  for (Vertex v = 0; v < n; ++v)
    if (!viable(v)) return std::nullopt;

  std::vector<char> chosen(g.edge_count(), 0);
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> search = [&](std::size_t pos) -> bool {
    if (++nodes > node_limit) throw SearchBudgetExceeded("feasibility search exceeded node limit");
    if (pos == order.size()) return true;
    const EdgeId e = order[pos];
    const Vertex u = g.edge(e).u, v = g.edge(e).v;
    const int ends = u == v ? 2 : 1;
    undecided[u] -= ends;
    if (u != v) undecided[v] -= 1;
    // Edges the objective rewards are tried in first.
    const int first = objective_gain(instance.objective, g.edge(e)) > 0 ? 1 : 0;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const int take = attempt == 0 ? first : 1 - first;
      if (take) {
        cur[u] += ends;
        if (u != v) cur[v] += 1;
      }
      if (viable(u) && viable(v)) {
        chosen[e] = static_cast<char>(take);
        if (search(pos + 1)) return true;
      }
      if (take) {
        cur[u] -= ends;
        if (u != v) cur[v] -= 1;
      }
    }
    chosen[e] = 0;
    undecided[u] += ends;
    if (u != v) undecided[v] += 1;
    return false;
  };
  if (!search(0)) return std::nullopt;

  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (chosen[e]) edges.push_back(e);
  return Matching(std::move(edges));
}

SolveResult improve_from(const BInstance& raw, Matching m, const SolveOptions& options) {
  const BInstance instance = normalized(raw);
  if (!is_b_matching(instance, m)) throw NotFeasible("improvement needs a B-matching to start from");
  SolveResult result;
  while (true) {
    const StepResult step = improvement_step(instance, m, options);
    result.candidates_solved += step.solved;
    if (options.trace) {
      *options.trace << "iteration " << result.iterations << " objective " << reported_value(instance, m)
                     << " candidates " << step.candidates << " solved " << step.solved << '\n';
    }
    if (!step.improved) break;
    if (objective_value(instance, *step.improved) <= objective_value(instance, m))
      throw Error("improvement step did not improve");
    m = *step.improved;
    ++result.iterations;
  }
  result.status = SolveStatus::Optimal;
  result.matching = std::move(m);
  return result;
}

std::optional<Matching> find_feasible_phase_one(const BInstance& raw, const SolveOptions& options) {
  const BInstance instance = normalized(raw);
  const MultiGraph& g = instance.graph;
  const std::size_t n = g.vertex_count();

  std::vector<int> d(n, 0);
  std::vector<EdgeId> start;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& x = g.edge(e);
    if (x.is_loop() ? d[x.u] + 2 <= instance.degree_sets[x.u].max()
                    : d[x.u] < instance.degree_sets[x.u].max() && d[x.v] < instance.degree_sets[x.v].max()) {
      start.push_back(e);
      d[x.u] += 1;
      d[x.v] += 1;
    }
  }

  BInstance aux;
  aux.objective = Objective::MaxWeight;
  std::vector<int> slack(n, 0);
  std::size_t extra = 0;
  for (Vertex v = 0; v < n; ++v) {
    while (!instance.degree_sets[v].contains(d[v] + slack[v])) ++slack[v];
    if (slack[v] > 0) ++extra;
  }
  aux.graph = MultiGraph(n + extra);
  for (const Edge& e : g.edges()) aux.graph.add_edge(e.u, e.v, 0);
  aux.degree_sets = instance.degree_sets;
  for (Vertex v = 0, z = n; v < n; ++v) {
    if (slack[v] == 0) continue;
    for (int k = 0; k < slack[v]; ++k) start.push_back(aux.graph.add_edge(v, z, -1));
    aux.degree_sets.push_back(DegreeSet::interval(0, slack[v]));
    ++z;
  }

  SolveOptions inner = options;
  inner.trace = nullptr;
  inner.first_improvement = true;
  const SolveResult r = improve_from(aux, Matching(std::move(start)), inner);
  if (total_weight(aux.graph, r.matching) < 0) return std::nullopt;
  std::vector<EdgeId> edges;
  for (EdgeId e : r.matching.edges())
    if (e < g.edge_count()) edges.push_back(e);
  Matching f(std::move(edges));
  if (!is_b_matching(instance, f)) throw Error("phase one produced an infeasible matching");
  return f;
}

std::optional<Matching> find_feasible_by_type(const BInstance& raw) {
  const BInstance instance = normalized(raw);
  enum class Pick { Widest, Highest, Lowest };
  for (Pick pick : {Pick::Widest, Pick::Highest, Pick::Lowest}) {
    UniformSpec spec;
    for (const DegreeSet& b : instance.degree_sets) {
      const auto iv = parity_intervals(b);
      std::size_t k = pick == Pick::Highest ? iv.size() - 1 : 0;
      if (pick == Pick::Widest)
        for (std::size_t i = 1; i < iv.size(); ++i)
          if (iv[i].hi - iv[i].lo > iv[k].hi - iv[k].lo) k = i;
      spec.push_back(UniformVertexSpec::from(iv[k]));
    }
    if (auto f = solve_uniform(instance, spec)) return f;
  }
  return std::nullopt;
}

SolveResult solve(const BInstance& raw, const SolveOptions& options) {
  const BInstance instance = normalized(raw);
  std::optional<Matching> start;
  switch (options.feasibility) {
    case FeasibilityMethod::Backtracking:
      start = find_feasible(instance, options.feasibility_node_limit);
      break;
    case FeasibilityMethod::PhaseOne:
      start = find_feasible_phase_one(instance, options);
      break;
    case FeasibilityMethod::Auto:
      try {
        start = find_feasible(instance, std::min(options.auto_backtrack_nodes, options.feasibility_node_limit));
      } catch (const SearchBudgetExceeded&) {
        start = find_feasible_by_type(instance);
        if (!start) start = find_feasible_phase_one(instance, options);
      }
      break;
  }
  if (!start) return {};
  return improve_from(instance, std::move(*start), options);
}

}  // namespace bmatch
