#pragma once

// Alternating decompositions of symmetric differences and the canonical
// paths built from them.
//
// Throughout, the weight of an edge is its gain under the instance objective
// (1 per edge for max-card), and w_M(S) = sum of gains over S \ M minus the
// sum over S & M, i.e. the objective change caused by applying S to M.

#include <optional>
#include <string>
#include <vector>

#include "bmatch/core.hpp"

namespace bmatch {

class NotBasic : public Error {
 public:
  using Error::Error;
};

struct WalkStep {
  EdgeId edge;
  Vertex from;
  Vertex to;
  bool operator==(const WalkStep&) const = default;
};

struct AlternatingWalk {
  enum class Kind { Path, Cycle };
  Kind kind = Kind::Path;
  std::vector<WalkStep> steps;

  Vertex start() const { return steps.front().from; }
  Vertex end() const { return steps.back().to; }
  std::vector<EdgeId> edge_ids() const;
  AlternatingWalk reversed() const;
  bool operator==(const AlternatingWalk&) const = default;
};

// Checks the alternating path / cycle definition with respect to M: edges
// alternate membership, no edge repeats; a cycle starts in M and closes
// outside M; a path whose endpoints coincide has both ending edges in M or
// both outside M.
bool is_alternating(const MultiGraph& g, const Matching& m, const AlternatingWalk& walk);

struct Decomposition {
  std::vector<AlternatingWalk> paths;
  std::vector<AlternatingWalk> cycles;
};

// Maximal decomposition of S relative to M: at every vertex the edge-ends of
// S inside M are paired with those outside M as far as possible (smallest
// edge index first), so every path end at x has the majority membership at x
// and no two paths concatenate. Paths are traced from unpaired ends in edge
// order; leftover closed trails become cycles starting with an M edge.
Decomposition decompose_edges(const MultiGraph& g, const Matching& m, const Matching& s);

// Decomposition of M + N; throws NotFeasible unless both are B-matchings.
Decomposition decompose_symmetric_difference(const BInstance& instance, const Matching& m, const Matching& n);

Matching apply(const Matching& m, const Matching& s);
Weight weight_of(const BInstance& instance, const Matching& m, const Matching& s);
Weight edge_gain(const BInstance& instance, EdgeId e);

// sum over v of |d_N(v) - d_M(v)|
long dist(const MultiGraph& g, const Matching& m, const Matching& n);

bool is_same_uniform_type(const BInstance& instance, const Matching& m, const Matching& n);
// The deviating set W when N is a B-matching of neighbouring type to M.
std::optional<std::vector<Vertex>> neighbouring_set(const BInstance& instance, const Matching& m, const Matching& n);
bool is_neighbouring_type(const BInstance& instance, const Matching& m, const Matching& n);

// Sequence of alternating paths P(v1,v2), P(v2,v3), ... with pairwise
// distinct junctions; a meta-cycle returns to v1.
struct MetaWalk {
  std::vector<AlternatingWalk> parts;

  Vertex start() const { return parts.front().start(); }
  Vertex end() const { return parts.back().end(); }
  std::vector<Vertex> junctions() const;
  std::vector<EdgeId> edge_ids() const;
};

struct CanonicalPath {
  Vertex first = 0;
  Vertex last = 0;
  std::vector<MetaWalk> cycles_first;  // meta-cycles through `first`
  std::vector<MetaWalk> cycles_last;   // meta-cycles through `last`, not `first`
  std::optional<MetaWalk> path;        // absent iff first == last

  Matching edges() const;
  std::vector<AlternatingWalk> parts() const;
  std::size_t component_count() const;
};

// Structural check of a given arrangement: parts alternate w.r.t. M, meta
// walks are well formed and edge-disjoint, meta-cycles pass through their
// endpoint, and M + S is of neighbouring type to M.
bool is_canonical(const BInstance& instance, const Matching& m, const CanonicalPath& s);

// Arranges whole alternating paths (w.r.t. M) into a canonical path, trying
// endpoints and meta-paths deterministically. nullopt if no arrangement
// exists or M + union is not of neighbouring type.
std::optional<CanonicalPath> arrange(const BInstance& instance, const Matching& m,
                                     const std::vector<AlternatingWalk>& paths);

// Edge-level decision: searches all maximal pairings of S's edge-ends for a
// decomposition into paths that arranges canonically. The empty set is not
// canonical. Throws TooLarge when the pairing search exceeds its budget.
std::optional<CanonicalPath> canonical_structure(const BInstance& instance, const Matching& m, const Matching& s);
bool is_canonical(const BInstance& instance, const Matching& m, const Matching& s);

enum class BasicGranularity {
  Components,  // unions of the alternating paths of S
  Edges,       // arbitrary edge subsets; intended for |S| <= 12
};

// A canonical S' inside S such that no proper canonical subset has weight
// >= w(S') or > 0. Repeatedly descends to the first offending subset
// (fewest elements, then lowest mask).
CanonicalPath make_basic(const BInstance& instance, const Matching& m, const CanonicalPath& s,
                         BasicGranularity granularity = BasicGranularity::Components);
bool is_basic(const BInstance& instance, const Matching& m, const CanonicalPath& s,
              BasicGranularity granularity = BasicGranularity::Components);

struct CanonicalSequence {
  std::vector<AlternatingWalk> cycles;
  std::vector<CanonicalPath> seq;
};

// Peels the alternating cycles of the maximal decomposition, then repeatedly
// grows a candidate from the first remaining path by attaching remaining
// paths at a wrong endpoint until it is canonical, reduces it to a basic one
// (component granularity) and applies it. Ends at N.
CanonicalSequence extract_canonical_sequence(const BInstance& instance, const Matching& m, const Matching& n);

struct EndpointLabel {
  Vertex vertex;
  bool odd;     // d_M(v) moved one step toward M + S is allowed
  int change;   // |d_{M+S}(v) - d_M(v)|
};

struct ClassifyReport {
  std::vector<EndpointLabel> endpoints;
  std::vector<std::string> violations;  // empty when every property holds
};

// Evaluates the structural properties basic canonical paths must have (degree
// set containments at internal vertices and endpoints, sign rules for
// meta-cycles attached to one or both endpoints). Degrees are measured
// relative to d_M(v) in the direction S moves v. Throws NotBasic when S
// fails a cheap necessary condition of basic-ness.
ClassifyReport classify(const BInstance& instance, const Matching& m, const CanonicalPath& s);

}  // namespace bmatch
