#include "cachelab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cachelab/rng.hpp"

namespace cachelab {

namespace {

void check_sizes(std::int64_t universe, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("generator: n must be >= 0");
    if (universe < 1 && n > 0)
        throw std::invalid_argument("generator: empty universe with nonzero length");
}

} // namespace

Trace gen_uniform_trace(std::int64_t universe, std::int64_t n, std::uint64_t seed) {
    check_sizes(universe, n);
    Rng rng(derive_seed(seed, "trace.uniform"));
    std::vector<ElementId> reqs(static_cast<std::size_t>(n));
    for (auto& e : reqs)
        e = static_cast<ElementId>(rng.bounded(static_cast<std::uint64_t>(universe)));
    return Trace(std::move(reqs), std::max<std::int64_t>(universe, 0));
}

Trace gen_zipf_trace(std::int64_t universe, std::int64_t n, double s, std::uint64_t seed) {
    check_sizes(universe, n);
    if (!(s > 0.0)) throw std::invalid_argument("generator: zipf exponent must be > 0");
    // Rank r (0-based id r) has weight (r+1)^-s; sample by inverting the CDF.
    std::vector<double> cdf(static_cast<std::size_t>(universe));
    double total = 0.0;
    for (std::int64_t r = 0; r < universe; ++r) {
        total += std::pow(static_cast<double>(r + 1), -s);
        cdf[static_cast<std::size_t>(r)] = total;
    }
    Rng rng(derive_seed(seed, "trace.zipf"));
    std::vector<ElementId> reqs(static_cast<std::size_t>(n));
    for (auto& e : reqs) {
        const double u = rng.uniform01() * total;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        e = static_cast<ElementId>(it == cdf.end() ? universe - 1 : it - cdf.begin());
    }
    return Trace(std::move(reqs), std::max<std::int64_t>(universe, 0));
}

AdversarialInstance gen_blind_counterexample(std::int64_t t_len) {
    if (t_len < 4) throw std::invalid_argument("blind counterexample: T must be >= 4");
    constexpr ElementId a = 0, b = 1, c = 2;
    std::vector<ElementId> reqs;
    reqs.reserve(static_cast<std::size_t>(t_len + 2));
    reqs.push_back(a);
    reqs.push_back(b);
    for (std::int64_t t = 0; t < t_len; ++t) reqs.push_back(t % 2 == 0 ? c : b);

    AdversarialInstance out;
    out.trace = Trace(std::move(reqs), 3);
    out.warmup = 2;
    out.k = 2;
    const NextArrivals truth = compute_next_arrivals(out.trace);
    out.predictions.resize(static_cast<std::size_t>(out.trace.size()));
    for (std::int64_t i = 0; i < out.trace.size(); ++i)
        out.predictions[static_cast<std::size_t>(i)] = static_cast<double>(truth[i]);
    // a never reappears, but it is predicted to return the moment c first
    // arrives (position 3), so its stored prediction is always the minimum.
    out.predictions[0] = 3.0;
    return out;
}

AdversarialInstance gen_fixed_blind_counterexample(std::int64_t t_len) {
    if (t_len < 16)
        throw std::invalid_argument("fixed blind counterexample: T must be >= 16");
    constexpr ElementId a = 0, b = 1, c = 2, d = 3;
    std::vector<ElementId> body(static_cast<std::size_t>(t_len), a);
    for (std::int64_t r = 0;; ++r) {
        const std::int64_t slot = (std::int64_t{1} << r) + 1; // local time 2^r + 1
        if (slot > t_len) break;
        body[static_cast<std::size_t>(slot - 1)] = (r % 2 == 1) ? c : d;
    }
    body.back() = b; // b appears only at the final time

    std::vector<ElementId> reqs;
    reqs.reserve(static_cast<std::size_t>(t_len + 3));
    reqs.push_back(a);
    reqs.push_back(b);
    reqs.push_back(c);
    reqs.insert(reqs.end(), body.begin(), body.end());

    AdversarialInstance out;
    out.trace = Trace(std::move(reqs), 4);
    out.warmup = 3;
    out.k = 3;
    const NextArrivals truth = compute_next_arrivals(out.trace);
    out.predictions.resize(static_cast<std::size_t>(out.trace.size()));
    for (std::int64_t i = 0; i < out.trace.size(); ++i) {
        const ElementId e = out.trace.at(i);
        if (e == c || e == d) {
            // predicted as due at the request itself: expired from the next
            // step on, so the expired-prediction rule always evicts c or d
            out.predictions[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
        } else {
            out.predictions[static_cast<std::size_t>(i)] = static_cast<double>(truth[i]);
        }
    }
    return out;
}

} // namespace cachelab
