#include "cachelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cachelab {

double harmonic(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("harmonic: k must be >= 1");
    static std::mutex mu;
    static std::map<std::int64_t, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    double value;
    if (k <= 4000) {
        using boost::multiprecision::cpp_rational;
        cpp_rational sum = 0;
        for (std::int64_t i = 1; i <= k; ++i) sum += cpp_rational(1, i);
        value = sum.convert_to<double>();
    } else {
        // rational arithmetic gets expensive; compensated summation is
        // accurate to well below one ulp of the double result here
        long double sum = 0.0L;
        for (std::int64_t i = k; i >= 1; --i) sum += 1.0L / static_cast<long double>(i);
        value = static_cast<double>(sum);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(k, value);
    return value;
}

double spread_l1(double m) {
    if (m < 0) throw std::invalid_argument("spread: m must be >= 0");
    return std::sqrt(4.0 * m + 1.0);
}

double spread_l2(double m) {
    if (m < 0) throw std::invalid_argument("spread: m must be >= 0");
    return std::cbrt(14.0 * m);
}

double spread_reported(LossKind kind, double m) {
    if (m == 0.0) return 0.0;
    return kind == LossKind::L1 ? spread_l1(m) : spread_l2(m);
}

namespace {

std::int64_t pair_loss(LossKind kind, std::int64_t a, std::int64_t b) {
    const std::int64_t d = a > b ? a - b : b - a;
    return kind == LossKind::L1 ? d : d * d;
}

// Minimum total loss over strictly increasing integer a_1..a_T (true
// arrival order) against weakly decreasing integer b_1..b_T (stored
// predictions along a chain), all within [0, 2T]. A weakly increasing b
// would trivially track a for zero loss; the forced-loss question is
// about order running the opposite way, with constant b allowed.
std::int64_t min_forced_loss(LossKind kind, std::int64_t t) {
    const std::int64_t range = 2 * t + 1; // values 0..2T
    const std::size_t cells = static_cast<std::size_t>(range * range);
    constexpr std::int64_t kInf = std::int64_t{1} << 60;
    std::vector<std::int64_t> layer(cells), pref(cells);

    auto at = [range](std::int64_t a, std::int64_t b) {
        return static_cast<std::size_t>(a * range + b);
    };

    for (std::int64_t a = 0; a < range; ++a)
        for (std::int64_t b = 0; b < range; ++b)
            layer[at(a, b)] = pair_loss(kind, a, b);

    for (std::int64_t i = 2; i <= t; ++i) {
        // pref(a,b) = min layer over a' <= a, b' >= b
        for (std::int64_t a = 0; a < range; ++a)
            for (std::int64_t b = range - 1; b >= 0; --b) {
                std::int64_t best = layer[at(a, b)];
                if (a > 0) best = std::min(best, pref[at(a - 1, b)]);
                if (b + 1 < range) best = std::min(best, pref[at(a, b + 1)]);
                pref[at(a, b)] = best;
            }
        for (std::int64_t a = 0; a < range; ++a)
            for (std::int64_t b = 0; b < range; ++b) {
                const std::int64_t prev = a > 0 ? pref[at(a - 1, b)] : kInf;
                layer[at(a, b)] =
                    prev >= kInf ? kInf : prev + pair_loss(kind, a, b);
            }
    }
    std::int64_t best = kInf;
    for (std::int64_t a = 0; a < range; ++a)
        for (std::int64_t b = 0; b < range; ++b) best = std::min(best, layer[at(a, b)]);
    return best;
}

} // namespace

std::vector<std::int64_t> min_loss_table(LossKind kind, std::int64_t t_max) {
    if (t_max < 1) throw std::invalid_argument("min_loss_table: t_max must be >= 1");
    std::vector<std::int64_t> table(static_cast<std::size_t>(t_max));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t t = 1; t <= t_max; ++t)
        table[static_cast<std::size_t>(t - 1)] = min_forced_loss(kind, t);
    return table;
}

std::int64_t spread_oracle(std::span<const std::int64_t> min_loss, std::int64_t m) {
    if (m < 0) throw std::invalid_argument("spread_oracle: m must be >= 0");
    for (std::size_t i = 0; i < min_loss.size(); ++i)
        if (min_loss[i] >= m) return static_cast<std::int64_t>(i) + 1;
    throw std::runtime_error("spread_oracle: t_max exceeded before reaching target loss");
}

std::int64_t spread_oracle(LossKind kind, std::int64_t m, std::int64_t t_max) {
    const auto table = min_loss_table(kind, t_max);
    return spread_oracle(table, m);
}

namespace {

void check_bound_inputs(double eta, double opt, std::int64_t k) {
    if (!(eta >= 0)) throw std::invalid_argument("bound: eta must be >= 0");
    if (!(opt >= 1)) throw std::invalid_argument("bound: opt must be >= 1");
    if (k < 1) throw std::invalid_argument("bound: k must be >= 1");
}

} // namespace

double spread_bound(double eta, double opt, std::int64_t k, LossKind kind) {
    check_bound_inputs(eta, opt, k);
    const double m = eta / opt;
    return 2.0 * std::min(1.0 + 2.0 * spread_reported(kind, m), 2.0 * harmonic(k));
}

double gamma_spread_bound(double eta, double opt, std::int64_t k, double gamma, LossKind kind) {
    check_bound_inputs(eta, opt, k);
    if (!(gamma > 0)) throw std::invalid_argument("bound: gamma must be > 0");
    const double m = eta / opt;
    return 2.0 * std::min(1.0 + (1.0 + gamma) / gamma * spread_reported(kind, m),
                          (1.0 + gamma) * harmonic(k));
}

double robustness_bound_l1(double eta1, double opt, std::int64_t k) {
    check_bound_inputs(eta1, opt, k);
    return std::min(2.0 + 2.0 * std::sqrt(4.0 * eta1 / opt + 1.0), 4.0 * harmonic(k));
}

double robustness_bound_l2(double eta2, double opt, std::int64_t k) {
    check_bound_inputs(eta2, opt, k);
    return std::min(2.0 + 2.0 * std::cbrt(14.0 * eta2 / opt), 4.0 * harmonic(k));
}

double reorder_bound(double eta_ed, double opt, std::int64_t k) {
    check_bound_inputs(eta_ed, opt, k);
    return std::min(3.0 + 2.0 * eta_ed / opt, 4.0 * harmonic(k));
}

double competitive_ratio(std::span<const std::int64_t> misses,
                         std::span<const std::int64_t> opt, AggMode mode) {
    if (misses.size() != opt.size() || misses.empty())
        throw std::invalid_argument("competitive_ratio: need matching nonempty samples");
    double num = 0.0, den = 0.0, ratios = 0.0;
    for (std::size_t i = 0; i < misses.size(); ++i) {
        if (opt[i] < 1) throw std::invalid_argument("competitive_ratio: opt must be >= 1");
        num += static_cast<double>(misses[i]);
        den += static_cast<double>(opt[i]);
        ratios += static_cast<double>(misses[i]) / static_cast<double>(opt[i]);
    }
    return mode == AggMode::MeanOfRatios ? ratios / static_cast<double>(misses.size())
                                         : num / den;
}

} // namespace cachelab
