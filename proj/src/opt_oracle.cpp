#include "cachelab/opt_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cachelab {

namespace {

struct Search {
    const Trace* trace;
    int k;
    std::int64_t n;
    // memo[pos * 2^universe + cache_mask]
    std::vector<std::int16_t> memo;

    std::int64_t solve(std::int64_t pos, std::uint32_t mask) {
        if (pos == n) return 0;
        auto& slot = memo[static_cast<std::size_t>(pos) * 128 + mask];
        if (slot >= 0) return slot;
        const auto e = static_cast<std::uint32_t>(trace->at(pos));
        const std::uint32_t bit = 1u << e;
        std::int64_t best;
        if (mask & bit) {
            best = solve(pos + 1, mask);
        } else if (std::popcount(mask) < k) {
            best = 1 + solve(pos + 1, mask | bit);
        } else {
            best = std::numeric_limits<std::int64_t>::max();
            for (std::uint32_t v = 0; v < 7; ++v) {
                const std::uint32_t vbit = 1u << v;
                if (!(mask & vbit)) continue;
                best = std::min(best, 1 + solve(pos + 1, (mask & ~vbit) | bit));
            }
        }
        slot = static_cast<std::int16_t>(best);
        return best;
    }
};

} // namespace

std::int64_t brute_force_opt(const Trace& trace, int k) {
    if (k < 1) throw std::invalid_argument("brute_force_opt: k must be >= 1");
    if (trace.size() > 14 || trace.universe() > 7 || k > 4)
        throw std::invalid_argument("brute_force_opt: instance too large (n<=14, universe<=7, k<=4)");
    Search s;
    s.trace = &trace;
    s.k = k;
    s.n = trace.size();
    s.memo.assign(static_cast<std::size_t>(s.n) * 128 + 1, -1);
    return s.n == 0 ? 0 : s.solve(0, 0);
}

} // namespace cachelab
