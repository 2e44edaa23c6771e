#pragma once

// Gadget chain: uniform B-matching -> (a,b)-matching (loop construction) ->
// perfect matching in a simple graph (vertex gadget plus global parity pool).

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bmatch/blossom.hpp"
#include "bmatch/core.hpp"

namespace bmatch {

class BadSpec : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

// Per-vertex uniform degree constraint.
struct UniformVertexSpec {
  enum class Kind { Interval, Parity };
  Kind kind = Kind::Interval;
  int lo = 0;
  int hi = 0;

  static UniformVertexSpec interval(int lo, int hi) { return {Kind::Interval, lo, hi}; }
  static UniformVertexSpec parity(int lo, int hi) { return {Kind::Parity, lo, hi}; }
  static UniformVertexSpec from(const ParityInterval& i) { return parity(i.lo, i.hi); }

  bool allows(int k) const;
  DegreeSet values() const;
  bool operator==(const UniformVertexSpec&) const = default;
};

using UniformSpec = std::vector<UniformVertexSpec>;

struct ABInstance {
  MultiGraph graph;
  std::vector<int> a;
  std::vector<int> b;
};

// Provenance of every edge of a reduced graph: the source edge it copies, or
// nullopt for gadget edges.
struct LiftMap {
  std::vector<std::optional<EdgeId>> origin;
};

// Restriction of a reduced solution to edges with source provenance.
Matching lift(const LiftMap& map, std::span<const EdgeId> solution);
// outer maps reduced -> middle, inner maps middle -> source.
LiftMap compose(const LiftMap& outer, const LiftMap& inner);

// Throws BadSpec when a bound lies outside [0, d_G(v)], lo > hi, or parity
// bounds differ in parity.
void check_spec(const MultiGraph& g, const UniformSpec& spec);

// Interval(a,b) vertices keep a,b; Parity(lo,hi) vertices get (hi-lo)/2
// weight-0 loops and a = b = hi. Source edges keep their index and weight;
// loops are appended after them.
std::pair<ABInstance, LiftMap> uniform_to_ab(const MultiGraph& g, const UniformSpec& spec);

enum class GadgetRole { External, Internal, PoolInternal, Pool };

struct GadgetNode {
  GadgetRole role;
  Vertex owner;  // source vertex; unused for pool nodes
};

struct GadgetGraph {
  SimpleWeightedGraph graph;
  LiftMap lift;  // reduced edge -> ABInstance edge
  std::vector<GadgetNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> external_of_edge;  // AB edge -> (node at u, node at v)
};

// Every edge-end gets an external node; the two externals of an edge are
// joined with the edge weight. Vertex v gets d(v) - a(v) internal nodes fully
// joined to its externals, b(v) - a(v) of which also reach every node of a
// weight-0 pool clique of size sum(b - a) + (sum b mod 2). Perfect matchings
// restricted to edge copies are exactly the (a,b)-matchings, with equal
// weight. Throws BoundsError unless a(v) <= b(v) <= d(v).
GadgetGraph ab_to_pm(const ABInstance& ab);

// The perfect matching of `gadget` that corresponds to (a,b)-matching `f`.
// Throws NotFeasible if f violates the bounds.
std::vector<EdgeId> embed(const ABInstance& ab, const GadgetGraph& gadget, const Matching& f);

// Number of pool nodes matched to internal nodes in a perfect matching.
std::size_t pool_internal_pairs(const GadgetGraph& gadget, std::span<const EdgeId> pm);

}  // namespace bmatch
