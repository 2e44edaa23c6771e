#pragma once

// Improvement search over neighbouring degree types: a B-matching is optimal
// iff no B-matching of the same uniform type or of neighbouring type is
// strictly better, and each type is a uniform B-matching problem.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bmatch/core.hpp"
#include "bmatch/reduce.hpp"

namespace bmatch {

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// t(v): index of the parity interval of B(v) holding d_M(v).
using TypeAssignment = std::vector<std::size_t>;

// Throws NotFeasible unless M is a B-matching.
TypeAssignment current_type(const BInstance& instance, const Matching& m);

struct TypeChange {
  Vertex vertex;
  int offset;  // interval-index step: +-1 for two changed vertices, +-2 for one
  bool operator==(const TypeChange&) const = default;
};

// Empty `changes` is the same-uniform-type candidate.
struct CandidateType {
  std::vector<TypeChange> changes;
  bool operator==(const CandidateType&) const = default;
};

// Fixed order: the empty candidate; single vertices ascending with offset -2
// before +2; vertex pairs lexicographically with direction pairs (-,-), (-,+),
// (+,-), (+,+). Nonexistent intervals are skipped.
std::vector<CandidateType> enumerate_candidates(const BInstance& instance, const Matching& m);

UniformSpec candidate_spec(const BInstance& instance, const TypeAssignment& type, const CandidateType& candidate);

enum class FeasibilityMethod {
  Backtracking,  // find_feasible with feasibility_node_limit
  PhaseOne,      // find_feasible_phase_one
  Auto,          // backtracking up to auto_backtrack_nodes, then
                 // find_feasible_by_type, then phase one
};

struct SolveOptions {
  unsigned jobs = 1;
  // Skip candidates whose objective upper bound cannot beat the incumbent.
  bool prune = true;
  // Take the earliest improving candidate instead of the best one. Used by
  // phase one; the optimality certificate is unaffected.
  bool first_improvement = false;
  std::uint64_t feasibility_node_limit = 50'000'000;
  FeasibilityMethod feasibility = FeasibilityMethod::Auto;
  std::uint64_t auto_backtrack_nodes = 200'000;
  std::ostream* trace = nullptr;
};

struct StepResult {
  std::optional<Matching> improved;
  std::size_t candidates = 0;
  std::size_t solved = 0;
  std::optional<std::size_t> chosen;  // index into enumerate_candidates
};

// Best strictly improving matching over all candidate types (ties go to the
// earliest candidate), or the earliest improving one with first_improvement. `improved` empty certifies that M is optimal.
StepResult improvement_step(const BInstance& instance, const Matching& m, const SolveOptions& options = {});

// Exact backtracking over edges in vertex-major order. Returns nullopt iff
// no B-matching exists; throws SearchBudgetExceeded past `node_limit`.
std::optional<Matching> find_feasible(const BInstance& instance, std::uint64_t node_limit = 50'000'000);

// Exact feasibility through the improvement loop itself: a greedy subset
// is completed with penalised slack edges to fresh vertices, so it is
// feasible in an auxiliary instance whose optimum is 0 iff the original
// instance has a B-matching.
std::optional<Matching> find_feasible_phase_one(const BInstance& instance, const SolveOptions& options = {});

// Heuristic: solves the uniform problem for a few fixed type assignments
// (widest, highest, lowest parity interval everywhere). A result is a
// B-matching; nullopt says nothing about feasibility.
std::optional<Matching> find_feasible_by_type(const BInstance& instance);

enum class SolveStatus { Optimal, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  Matching matching;
  std::size_t iterations = 0;
  std::size_t candidates_solved = 0;
};

// Runs improvement_step from the B-matching `start` until no candidate
// improves.
SolveResult improve_from(const BInstance& instance, Matching start, const SolveOptions& options = {});

// A feasible start (see FeasibilityMethod), then improvement_step until no
// candidate improves. The loop
// runs at most |E| times for cardinality objectives; for weight objectives
// the bound is the gap between the optimal and initial weight.
SolveResult solve(const BInstance& instance, const SolveOptions& options = {});

}  // namespace bmatch
