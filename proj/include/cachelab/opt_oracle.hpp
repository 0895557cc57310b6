#pragma once

#include <cstdint>

#include "cachelab/trace.hpp"

namespace cachelab {

// Exact minimum miss count over every possible eviction decision,
// memoized on (position, cache contents). Exponential in spirit, so the
// inputs are capped: n <= 14, universe <= 7, k <= 4. Independent check
// for the furthest-next-arrival policy.
std::int64_t brute_force_opt(const Trace& trace, int k);

} // namespace cachelab
