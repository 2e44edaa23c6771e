#include "bmatch/oracle.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "bmatch/neighbourhood.hpp"
#include "bmatch/structure.hpp"

namespace bmatch {

namespace {

void check_limit(std::size_t edges, std::size_t limit) {
  if (edges > limit || edges >= 63)
    throw TooLarge("enumeration over " + std::to_string(edges) + " edges exceeds limit " + std::to_string(limit));
}

// Visits every subset of edges whose degrees satisfy `ok`, in bitmask order.
template <class Ok, class Visit>
void for_each_subset(const MultiGraph& g, std::size_t limit, Ok ok, Visit visit) {
  const std::size_t m = g.edge_count();
  check_limit(m, limit);
  std::vector<int> d(g.vertex_count());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::fill(d.begin(), d.end(), 0);
    std::vector<EdgeId> edges;
    for (EdgeId e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      edges.push_back(e);
      ++d[g.edge(e).u];
      ++d[g.edge(e).v];
    }
    bool good = true;
    for (Vertex v = 0; v < g.vertex_count() && good; ++v) good = ok(v, d[v]);
    if (good) visit(Matching(std::move(edges)));
  }
}

}  // namespace

void for_each_b_matching(const BInstance& instance, const std::function<void(const Matching&)>& visit,
                         std::size_t edge_limit) {
  for_each_subset(
      instance.graph, edge_limit, [&](Vertex v, int d) { return instance.degree_sets[v].contains(d); }, visit);
}

std::vector<Matching> enumerate_b_matchings(const BInstance& instance, std::size_t edge_limit) {
  std::vector<Matching> out;
  for_each_b_matching(instance, [&](const Matching& f) { out.push_back(f); }, edge_limit);
  return out;
}

std::optional<OracleResult> oracle_optimum(const BInstance& instance, std::size_t edge_limit) {
  std::optional<OracleResult> best;
  std::optional<Weight> best_value;
  for_each_b_matching(
      instance,
      [&](const Matching& f) {
        const Weight v = objective_value(instance, f);
        if (!best_value || v > *best_value) {
          best_value = v;
          best = OracleResult{reported_value(instance, f), f};
        }
      },
      edge_limit);
  return best;
}

std::optional<OracleResult> oracle_uniform(const BInstance& instance, const UniformSpec& spec,
                                           std::size_t edge_limit) {
  if (spec.size() != instance.vertex_count()) throw BadSpec("spec size does not match vertex count");
  std::optional<OracleResult> best;
  std::optional<Weight> best_value;
  for_each_subset(
      instance.graph, edge_limit, [&](Vertex v, int d) { return spec[v].allows(d); },
      [&](const Matching& f) {
        const Weight v = objective_value(instance, f);
        if (!best_value || v > *best_value) {
          best_value = v;
          best = OracleResult{reported_value(instance, f), f};
        }
      });
  return best;
}

std::optional<OracleResult> oracle_ab(const ABInstance& ab, std::size_t edge_limit) {
  std::optional<OracleResult> best;
  for_each_subset(
      ab.graph, edge_limit, [&](Vertex v, int d) { return d >= ab.a[v] && d <= ab.b[v]; },
      [&](const Matching& f) {
        const Weight w = total_weight(ab.graph, f);
        if (!best || w > best->value) best = OracleResult{w, f};
      });
  return best;
}

std::optional<Counterexample> verify_improvement_theorem(const BInstance& raw, std::size_t edge_limit) {
  const BInstance instance = normalized(raw);
  const auto all = enumerate_b_matchings(instance, edge_limit);
  std::vector<Weight> value;
  for (const auto& f : all) value.push_back(objective_value(instance, f));
  Weight best = std::numeric_limits<Weight>::min();
  for (Weight v : value) best = std::max(best, v);

  for (std::size_t i = 0; i < all.size(); ++i) {
    if (value[i] == best) continue;
    bool found = false;
    for (std::size_t j = 0; j < all.size() && !found; ++j)
      found = value[j] > value[i] && is_neighbouring_type(instance, all[i], all[j]);
    if (!found) {
      return Counterexample{all[i], std::nullopt,
                            "improvable B-matching has no better matching of same or neighbouring type"};
    }
  }
  return std::nullopt;
}

namespace {

// Canonical flags and weights for every submask of `universe` edges,
// relative to a fixed matching.
class SubmaskTable {
 public:
  SubmaskTable(const BInstance& instance, const Matching& base, const std::vector<EdgeId>& universe,
               std::uint32_t domain)
      : canonical_(std::size_t{1} << universe.size(), 0), weight_(std::size_t{1} << universe.size(), 0) {
    for (std::uint32_t s = domain;; s = (s - 1) & domain) {
      if (s != 0) {
        const Matching edges = subset(universe, s);
        canonical_[s] = is_canonical(instance, base, edges) ? 1 : 0;
        weight_[s] = weight_of(instance, base, edges);
      }
      if (s == 0) break;
    }
  }

  static Matching subset(const std::vector<EdgeId>& universe, std::uint32_t s) {
    std::vector<EdgeId> edges;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (s >> i & 1) edges.push_back(universe[i]);
    return Matching(std::move(edges));
  }

  bool canonical(std::uint32_t s) const { return canonical_[s] != 0; }
  Weight weight(std::uint32_t s) const { return weight_[s]; }

  // Canonical with no canonical proper subset of weight >= w(s) or > 0.
  bool basic(std::uint32_t s) const {
    if (!canonical(s)) return false;
    for (std::uint32_t y = (s - 1) & s; y != 0; y = (y - 1) & s)
      if (canonical(y) && (weight(y) >= weight(s) || weight(y) > 0)) return false;
    return true;
  }

 private:
  std::vector<char> canonical_;
  std::vector<Weight> weight_;
};

}  // namespace

std::optional<Counterexample> verify_exchange_lemma(const BInstance& raw, const Matching& m, const Matching& n,
                                                    std::size_t edge_limit, ExchangeStats* stats) {
  const BInstance instance = normalized(raw);
  if (!is_b_matching(instance, m) || !is_b_matching(instance, n))
    throw NotFeasible("exchange check needs two B-matchings");
  if (objective_value(instance, m) >= objective_value(instance, n)) return std::nullopt;
  const std::vector<EdgeId> x = symmetric_difference(m, n).edges();
  if (x.size() > edge_limit || x.size() > 20)
    throw TooLarge("symmetric difference of " + std::to_string(x.size()) + " edges exceeds limit");
  const std::uint32_t full = (std::uint32_t{1} << x.size()) - 1;

  const SubmaskTable from_m(instance, m, x, full);
  Weight best_canonical = std::numeric_limits<Weight>::min();
  for (std::uint32_t t = 1; t <= full; ++t)
    if (from_m.canonical(t)) best_canonical = std::max(best_canonical, from_m.weight(t));

  for (std::uint32_t q = 1; q <= full; ++q) {
    if (from_m.weight(q) > 0 || !from_m.basic(q)) continue;
    if (stats) ++stats->basic_q;
    // With the conclusion already true only the statistics need R.
    const bool holds = best_canonical > from_m.weight(q);
    if (holds && !stats) continue;
    const Matching mq = apply(m, SubmaskTable::subset(x, q));
    const std::uint32_t rest = full & ~q;
    if (rest == 0) continue;
    const SubmaskTable from_mq(instance, mq, x, rest);
    for (std::uint32_t r = rest; r != 0; r = (r - 1) & rest) {
      if (from_mq.weight(r) > 0 && from_mq.basic(r)) {
        if (stats) ++stats->premise;
        if (holds) break;
        return Counterexample{m, n,
                              "basic Q with w(Q) = " + std::to_string(from_m.weight(q)) +
                                  " and a positive basic R after it, but no canonical T beats Q"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace bmatch
