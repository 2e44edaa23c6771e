#include "bmatch/core.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace bmatch {

Weight checked_add(Weight a, Weight b) {
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) throw WeightOverflow();
  return r;
}

Weight checked_sub(Weight a, Weight b) {
  Weight r;
  if (__builtin_sub_overflow(a, b, &r)) throw WeightOverflow();
  return r;
}

Weight checked_mul(Weight a, Weight b) {
  Weight r;
  if (__builtin_mul_overflow(a, b, &r)) throw WeightOverflow();
  return r;
}

EdgeId MultiGraph::add_edge(Vertex u, Vertex v, Weight w) {
  edges_.push_back({u, v, w});
  return edges_.size() - 1;
}

int MultiGraph::degree(Vertex v) const {
  int d = 0;
  for (const Edge& e : edges_) {
    if (e.u == v) ++d;
    if (e.v == v) ++d;
  }
  return d;
}

std::vector<int> MultiGraph::degrees() const {
  std::vector<int> d(vertex_count_, 0);
  for (const Edge& e : edges_) {
    if (e.u < vertex_count_) ++d[e.u];
    if (e.v < vertex_count_) ++d[e.v];
  }
  return d;
}

DegreeSet::DegreeSet(std::vector<int> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0) throw Error("degree set contains a negative value");
    if (i > 0 && values_[i] <= values_[i - 1]) throw Error("degree set is not strictly increasing");
  }
}

DegreeSet DegreeSet::interval(int lo, int hi) {
  std::vector<int> v;
  for (int k = lo; k <= hi; ++k) v.push_back(k);
  return DegreeSet(std::move(v));
}

DegreeSet DegreeSet::parity(int lo, int hi) {
  if ((hi - lo) % 2 != 0) throw Error("parity class bounds differ in parity");
  std::vector<int> v;
  for (int k = lo; k <= hi; k += 2) v.push_back(k);
  return DegreeSet(std::move(v));
}

bool DegreeSet::contains(int k) const { return std::binary_search(values_.begin(), values_.end(), k); }

DegreeSet DegreeSet::truncated(int limit) const {
  DegreeSet out;
  for (int k : values_)
    if (k <= limit) out.values_.push_back(k);
  return out;
}

int DegreeSet::longest_gap() const {
  int gap = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) gap = std::max(gap, values_[i] - values_[i - 1] - 1);
  return gap;
}

std::vector<ParityInterval> parity_intervals(const DegreeSet& b) {
  std::vector<ParityInterval> out;
  for (int k : b.values()) {
    if (!out.empty() && k == out.back().hi + 2) {
      out.back().hi = k;
    } else {
      out.push_back({k, k});
    }
  }
  return out;
}

std::size_t interval_index(const DegreeSet& b, int k) {
  if (!b.contains(k)) throw NotInSet("degree " + std::to_string(k) + " is not in the degree set");
  const auto intervals = parity_intervals(b);
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (intervals[i].contains(k)) return i;
  throw NotInSet("degree " + std::to_string(k) + " is not in the degree set");
}

ParityInterval interval_of(const DegreeSet& b, int k) { return parity_intervals(b)[interval_index(b, k)]; }

std::string to_string(Objective o) {
  switch (o) {
    case Objective::MaxCard: return "max-card";
    case Objective::MinCard: return "min-card";
    case Objective::MaxWeight: return "max-weight";
    case Objective::MinWeight: return "min-weight";
  }
  return "?";
}

Objective parse_objective(const std::string& name) {
  if (name == "max-card") return Objective::MaxCard;
  if (name == "min-card") return Objective::MinCard;
  if (name == "max-weight") return Objective::MaxWeight;
  if (name == "min-weight") return Objective::MinWeight;
  throw Error("unknown objective '" + name + "'");
}

InvalidInstance::InvalidInstance(std::vector<ValidationIssue> issues)
    : Error([&] {
        std::ostringstream os;
        os << "invalid instance:";
        for (const auto& i : issues) os << ' ' << i.message << ';';
        return os.str();
      }()),
      issues_(std::move(issues)) {}

std::vector<ValidationIssue> validate(const BInstance& instance) {
  std::vector<ValidationIssue> issues;
  const MultiGraph& g = instance.graph;
  const std::size_t n = g.vertex_count();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).u >= n || g.edge(e).v >= n)
      issues.push_back({IssueKind::BadEndpoint, e, "BadEndpoint(edge " + std::to_string(e) + ")"});
  }
  if (instance.degree_sets.size() != n) {
    issues.push_back({IssueKind::CountMismatch, instance.degree_sets.size(),
                      "expected " + std::to_string(n) + " degree sets, got " +
                          std::to_string(instance.degree_sets.size())});
    return issues;
  }
  const auto deg = g.degrees();
  for (Vertex v = 0; v < n; ++v) {
    const DegreeSet b = instance.degree_sets[v].truncated(deg[v]);
    if (b.empty()) {
      issues.push_back({IssueKind::EmptyDegreeSet, v, "EmptyDegreeSet(" + std::to_string(v) + ")"});
    } else if (b.longest_gap() > 1) {
      issues.push_back({IssueKind::GapTooLong, v, "GapTooLong(" + std::to_string(v) + ")"});
    }
  }
  return issues;
}

BInstance normalized(const BInstance& instance) {
  auto issues = validate(instance);
  if (!issues.empty()) throw InvalidInstance(std::move(issues));
  BInstance out = instance;
  const auto deg = instance.graph.degrees();
  for (Vertex v = 0; v < out.vertex_count(); ++v) out.degree_sets[v] = out.degree_sets[v].truncated(deg[v]);
  return out;
}

Matching::Matching(std::vector<EdgeId> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Matching::contains(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

void check_edges(const MultiGraph& g, const Matching& f) {
  for (EdgeId e : f.edges())
    if (e >= g.edge_count()) throw Error("matching refers to nonexistent edge " + std::to_string(e));
}

int degree(const MultiGraph& g, const Matching& f, Vertex v) {
  int d = 0;
  for (EdgeId e : f.edges()) {
    if (g.edge(e).u == v) ++d;
    if (g.edge(e).v == v) ++d;
  }
  return d;
}

std::vector<int> degrees(const MultiGraph& g, const Matching& f) {
  std::vector<int> d(g.vertex_count(), 0);
  for (EdgeId e : f.edges()) {
    ++d[g.edge(e).u];
    ++d[g.edge(e).v];
  }
  return d;
}

bool is_b_matching(const BInstance& instance, const Matching& f) {
  for (EdgeId e : f.edges())
    if (e >= instance.edge_count()) return false;
  const auto d = degrees(instance.graph, f);
  for (Vertex v = 0; v < instance.vertex_count(); ++v)
    if (!instance.degree_sets[v].contains(d[v])) return false;
  return true;
}

Matching symmetric_difference(const Matching& a, const Matching& b) {
  std::vector<EdgeId> out;
  std::set_symmetric_difference(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                                std::back_inserter(out));
  return Matching(std::move(out));
}

Weight total_weight(const MultiGraph& g, const Matching& f) {
  Weight w = 0;
  for (EdgeId e : f.edges()) w = checked_add(w, g.edge(e).w);
  return w;
}

bool is_minimization(Objective o) { return o == Objective::MinCard || o == Objective::MinWeight; }

Weight objective_gain(Objective o, const Edge& e) {
  switch (o) {
    case Objective::MaxCard: return 1;
    case Objective::MinCard: return -1;
    case Objective::MaxWeight: return e.w;
    case Objective::MinWeight: return checked_sub(0, e.w);
  }
  return 0;
}

Weight objective_value(const BInstance& instance, const Matching& f) {
  Weight v = 0;
  for (EdgeId e : f.edges()) v = checked_add(v, objective_gain(instance.objective, instance.graph.edge(e)));
  return v;
}

Weight reported_value(const BInstance& instance, const Matching& f) {
  if (instance.objective == Objective::MaxCard || instance.objective == Objective::MinCard)
    return static_cast<Weight>(f.size());
  return total_weight(instance.graph, f);
}

}  // namespace bmatch
