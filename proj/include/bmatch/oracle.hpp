#pragma once

// Exhaustive ground truth for tiny instances.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bmatch/core.hpp"
#include "bmatch/reduce.hpp"

namespace bmatch {

inline constexpr std::size_t kDefaultOracleEdgeLimit = 20;

// Calls `visit` on every B-matching in increasing bitmask order (bit i is
// edge i). Throws TooLarge when |E| exceeds `edge_limit`.
void for_each_b_matching(const BInstance& instance, const std::function<void(const Matching&)>& visit,
                         std::size_t edge_limit = kDefaultOracleEdgeLimit);
std::vector<Matching> enumerate_b_matchings(const BInstance& instance,
                                            std::size_t edge_limit = kDefaultOracleEdgeLimit);

struct OracleResult {
  Weight value = 0;  // reported value: |F| or w(F)
  Matching witness;  // first optimum in enumeration order
};

std::optional<OracleResult> oracle_optimum(const BInstance& instance,
                                           std::size_t edge_limit = kDefaultOracleEdgeLimit);

// Brute force over all F with d_F(v) allowed by spec[v].
std::optional<OracleResult> oracle_uniform(const BInstance& instance, const UniformSpec& spec,
                                           std::size_t edge_limit = kDefaultOracleEdgeLimit);

// Brute force over all F with a(v) <= d_F(v) <= b(v); value is the weight.
std::optional<OracleResult> oracle_ab(const ABInstance& ab, std::size_t edge_limit = kDefaultOracleEdgeLimit);

struct Counterexample {
  Matching m;
  std::optional<Matching> n;
  std::string detail;
};

// For every B-matching M that some B-matching beats, checks that a strictly
// better one of the same uniform type or of neighbouring type exists.
std::optional<Counterexample> verify_improvement_theorem(const BInstance& instance,
                                                         std::size_t edge_limit = kDefaultOracleEdgeLimit);

inline constexpr std::size_t kExchangeEdgeLimit = 12;

// Exchange property for tiny symmetric differences: whenever a basic Q with
// w(Q) <= 0 w.r.t. M and a basic R with w(R) > 0 w.r.t. M + Q both lie in
// M + N, some canonical T inside M + N w.r.t. M has w(T) > w(Q). Requires
// value(M) < value(N); otherwise trivially ok.
struct ExchangeStats {
  std::size_t basic_q = 0;  // basic Q with w(Q) <= 0
  std::size_t premise = 0;  // of those, Q followed by some positive basic R
};
std::optional<Counterexample> verify_exchange_lemma(const BInstance& instance, const Matching& m, const Matching& n,
                                                    std::size_t edge_limit = kExchangeEdgeLimit,
                                                    ExchangeStats* stats = nullptr);

}  // namespace bmatch
