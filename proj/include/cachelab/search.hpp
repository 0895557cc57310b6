#pragma once

#include <cstdint>
#include <cstddef>
#include <span>

namespace cachelab {

struct SearchOutcome {
    bool found = false;
    std::size_t index = 0;  // match when found, insertion point otherwise
    std::size_t probes = 0; // array reads performed
};

// Position lookup steered by a predicted index: probe h, double the
// offset toward the query's side until a bracket (or boundary) is found,
// then bisect inside it. With error e = |h - true position| the probe
// count stays within 2*log2(max(e, 2)) + kProbeSlack; a perfect hint
// costs a single probe.
inline constexpr std::size_t kProbeSlack = 4;

SearchOutcome predicted_search(std::span<const std::int64_t> sorted, std::int64_t query,
                               std::size_t hint);

// Plain lower-bound bisection with the same probe accounting, for
// comparison.
SearchOutcome binary_search(std::span<const std::int64_t> sorted, std::int64_t query);

} // namespace cachelab
