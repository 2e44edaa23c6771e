#pragma once

// Seeded random instances. Output depends only on the options: the engine is
// mt19937_64 (fully specified by the standard) and bounded draws use our own
// rejection sampling instead of the library's unspecified distributions.

#include <cstdint>
#include <random>
#include <string>

#include "bmatch/core.hpp"

namespace bmatch {

enum class DegreeProfile { Interval, Parity, Mixed };

std::string to_string(DegreeProfile p);
DegreeProfile parse_profile(const std::string& name);

struct GeneratorOptions {
  std::size_t n = 6;
  std::size_t m = 9;
  std::uint64_t seed = 0;
  DegreeProfile profile = DegreeProfile::Mixed;
  // Build every degree set around the degrees of a hidden random edge subset,
  // so the instance is feasible.
  bool planted = true;
  // Allow loops and parallel edges; otherwise the graph is simple and m is
  // capped by n(n-1)/2.
  bool multigraph = false;
  Weight min_weight = 1;  // weights uniform in [min_weight, max_weight]
  Weight max_weight = 1;
  Objective objective = Objective::MaxCard;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi]; requires lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

// Throws Error when a simple graph cannot hold m edges.
BInstance generate(const GeneratorOptions& options);

}  // namespace bmatch
