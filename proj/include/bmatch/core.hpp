#pragma once

// Instance model shared by every solver layer: multigraphs with loops and
// parallel edges, per-vertex degree sets, and edge-subset matchings.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmatch {

using Vertex = std::size_t;
using EdgeId = std::size_t;
using Weight = std::int64_t;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WeightOverflow : public Error {
 public:
  WeightOverflow() : Error("weight arithmetic overflow") {}
};

class NotInSet : public Error {
 public:
  using Error::Error;
};

class NotFeasible : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

Weight checked_add(Weight a, Weight b);
Weight checked_sub(Weight a, Weight b);
Weight checked_mul(Weight a, Weight b);

// ---------------------------------------------------------------------------
// Graph

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 1;

  bool is_loop() const { return u == v; }
  Vertex other(Vertex x) const { return x == u ? v : u; }
};

class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  EdgeId add_edge(Vertex u, Vertex v, Weight w = 1);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edge-ends at v; a loop contributes 2.
  int degree(Vertex v) const;
  std::vector<int> degrees() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Degree sets

// {lo, lo+2, ..., hi}
struct ParityInterval {
  int lo = 0;
  int hi = 0;

  bool contains(int k) const { return k >= lo && k <= hi && (k - lo) % 2 == 0; }
  int max() const { return hi; }
  int min() const { return lo; }
  bool operator==(const ParityInterval&) const = default;
};

class DegreeSet {
 public:
  DegreeSet() = default;
  // Throws Error unless `values` is strictly increasing and nonnegative.
  explicit DegreeSet(std::vector<int> values);
  DegreeSet(std::initializer_list<int> values) : DegreeSet(std::vector<int>(values)) {}

  static DegreeSet interval(int lo, int hi);
  static DegreeSet parity(int lo, int hi);

  const std::vector<int>& values() const { return values_; }
  bool empty() const { return values_.empty(); }
  bool contains(int k) const;
  int min() const { return values_.front(); }
  int max() const { return values_.back(); }

  // Values not exceeding `limit`.
  DegreeSet truncated(int limit) const;
  // Largest difference between consecutive values minus one (0 for a
  // contiguous or singleton set).
  int longest_gap() const;

  bool operator==(const DegreeSet&) const = default;

 private:
  std::vector<int> values_;
};

// Maximal same-parity runs of B, increasing. Requires B nonempty with no gap
// longer than 1; consecutive intervals then satisfy hi_i + 1 == lo_{i+1}.
std::vector<ParityInterval> parity_intervals(const DegreeSet& b);

// Index of the interval of parity_intervals(b) containing k; throws NotInSet.
std::size_t interval_index(const DegreeSet& b, int k);
ParityInterval interval_of(const DegreeSet& b, int k);

// ---------------------------------------------------------------------------
// Instances

enum class Objective { MaxCard, MinCard, MaxWeight, MinWeight };

std::string to_string(Objective o);
// Throws Error on an unknown name.
Objective parse_objective(const std::string& name);

struct BInstance {
  MultiGraph graph;
  std::vector<DegreeSet> degree_sets;
  Objective objective = Objective::MaxCard;

  std::size_t vertex_count() const { return graph.vertex_count(); }
  std::size_t edge_count() const { return graph.edge_count(); }
};

enum class IssueKind { GapTooLong, EmptyDegreeSet, BadEndpoint, CountMismatch };

struct ValidationIssue {
  IssueKind kind;
  std::size_t index;  // vertex, or edge for BadEndpoint
  std::string message;
};

class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// Checks every degree set after dropping values above d_G(v). Empty result
// means the instance is valid.
std::vector<ValidationIssue> validate(const BInstance& instance);

// Copy of `instance` with unattainable degree values dropped; throws
// InvalidInstance if validation fails.
BInstance normalized(const BInstance& instance);

// ---------------------------------------------------------------------------
// Matchings

class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<EdgeId> edges);
  Matching(std::initializer_list<EdgeId> edges) : Matching(std::vector<EdgeId>(edges)) {}

  const std::vector<EdgeId>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(EdgeId e) const;

  bool operator==(const Matching&) const = default;
  auto operator<=>(const Matching&) const = default;

 private:
  std::vector<EdgeId> edges_;  // sorted, unique
};

// Throws Error if some index is out of range.
void check_edges(const MultiGraph& g, const Matching& f);

int degree(const MultiGraph& g, const Matching& f, Vertex v);
std::vector<int> degrees(const MultiGraph& g, const Matching& f);
bool is_b_matching(const BInstance& instance, const Matching& f);

Matching symmetric_difference(const Matching& a, const Matching& b);

Weight total_weight(const MultiGraph& g, const Matching& f);

// Per-edge contribution to the maximized objective: 1 / -1 for cardinality
// senses, w / -w for weight senses.
Weight objective_gain(Objective o, const Edge& e);
// Value that the solver maximizes; min senses are negated.
Weight objective_value(const BInstance& instance, const Matching& f);
bool is_minimization(Objective o);
// Value reported to users: |F| for cardinality senses, w(F) for weight senses.
Weight reported_value(const BInstance& instance, const Matching& f);

}  // namespace bmatch
