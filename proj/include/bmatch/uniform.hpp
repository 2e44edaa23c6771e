#pragma once

#include <optional>

#include "bmatch/core.hpp"
#include "bmatch/reduce.hpp"

namespace bmatch {

// Maximum-weight (a,b)-matching of `ab` by perfect matching on its gadget.
std::optional<Matching> solve_ab(const ABInstance& ab);

// Optimum of the instance objective over matchings F with d_F(v) allowed by
// spec[v] for every v, or nullopt if none exists. Min senses are solved as
// max over negated gains. Deterministic.
std::optional<Matching> solve_uniform(const BInstance& instance, const UniformSpec& spec);

}  // namespace bmatch
