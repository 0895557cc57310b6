#include "cachelab/search.hpp"

#include <stdexcept>

namespace cachelab {

namespace {

// lower bound over (lo, hi]: lo satisfies A[lo] < q (or lo == -1), hi
// satisfies A[hi] >= q (or hi == n). Probes each midpoint once.
std::size_t bisect(std::span<const std::int64_t> a, std::int64_t q, std::int64_t lo,
                   std::int64_t hi, std::size_t& probes) {
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        ++probes;
        if (a[static_cast<std::size_t>(mid)] < q)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<std::size_t>(hi);
}

} // namespace

SearchOutcome predicted_search(std::span<const std::int64_t> a, std::int64_t q,
                               std::size_t hint) {
    SearchOutcome out;
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    if (n == 0) return out;
    if (hint >= a.size()) throw std::invalid_argument("predicted_search: hint out of range");

    const auto h = static_cast<std::int64_t>(hint);
    ++out.probes;
    const std::int64_t at_h = a[hint];
    if (at_h == q) {
        out.found = true;
        out.index = hint;
        return out;
    }

    std::int64_t lo, hi;
    if (at_h < q) {
        // scan right: offsets 1, 2, 4, ... until a[h+d] >= q or the end
        std::int64_t prev = h, d = 1;
        for (;;) {
            std::int64_t probe = h + d;
            if (probe >= n) {
                lo = prev;
                hi = n;
                break;
            }
            ++out.probes;
            if (a[static_cast<std::size_t>(probe)] >= q) {
                lo = prev;
                hi = probe;
                break;
            }
            prev = probe;
            d *= 2;
        }
    } else {
        // scan left symmetrically until a[h-d] < q or the start
        std::int64_t prev = h, d = 1;
        for (;;) {
            std::int64_t probe = h - d;
            if (probe < 0) {
                lo = -1;
                hi = prev;
                break;
            }
            ++out.probes;
            if (a[static_cast<std::size_t>(probe)] < q) {
                lo = probe;
                hi = prev;
                break;
            }
            prev = probe;
            d *= 2;
        }
    }

    const std::size_t pos = bisect(a, q, lo, hi, out.probes);
    out.index = pos;
    if (pos < a.size()) {
        ++out.probes;
        out.found = a[pos] == q;
    }
    return out;
}

SearchOutcome binary_search(std::span<const std::int64_t> a, std::int64_t q) {
    SearchOutcome out;
    if (a.empty()) return out;
    const std::size_t pos = bisect(a, q, -1, static_cast<std::int64_t>(a.size()), out.probes);
    out.index = pos;
    if (pos < a.size()) {
        ++out.probes;
        out.found = a[pos] == q;
    }
    return out;
}

} // namespace cachelab
