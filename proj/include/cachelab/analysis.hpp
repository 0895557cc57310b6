#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cachelab {

// k-th harmonic number 1 + 1/2 + ... + 1/k, summed exactly as a rational
// and rounded once to double.
double harmonic(std::int64_t k);

enum class LossKind { L1, L2 };

// Closed-form upper bounds on the spread: the shortest run of requests
// whose true arrivals increase while their stored predictions weakly
// decrease that is forced to accumulate loss >= m. sqrt(4m+1) for
// absolute loss, cbrt(14m) for squared loss.
double spread_l1(double m);
double spread_l2(double m);

// min_loss_table(kind, t_max)[T-1] = the minimum total loss achievable by
// a strictly increasing integer truth sequence of length T against a
// weakly decreasing integer prediction sequence, both confined to
// [0, 2T]. Searched exhaustively by dynamic programming; ground truth for
// validating the closed forms above.
std::vector<std::int64_t> min_loss_table(LossKind kind, std::int64_t t_max);

// Smallest T whose minimum forced loss reaches m; throws when t_max is
// not enough. By convention the search starts at T = 1, so the result
// for m = 0 is 1.
std::int64_t spread_oracle(LossKind kind, std::int64_t m, std::int64_t t_max);
std::int64_t spread_oracle(std::span<const std::int64_t> min_loss, std::int64_t m);

// Reported spread: 0 at zero loss (a perfect oracle causes no stale
// misses), closed form otherwise. The combinatorial definition gives 1 at
// m = 0; both views are exposed, this one feeds the ratio bounds so that
// the zero-error bound is exactly 2.
double spread_reported(LossKind kind, double m);

// Competitive-ratio bounds as functions of total loss eta, the offline
// optimum and the cache size.
double spread_bound(double eta, double opt, std::int64_t k, LossKind kind);
double gamma_spread_bound(double eta, double opt, std::int64_t k, double gamma, LossKind kind);
// Loss-specific specializations used in reports:
//   l1: min(2 + 2*sqrt(4 eta1/opt + 1), 4 H_k)
//   l2: min(2 + 2*cbrt(14 eta2/opt),    4 H_k)
//   reorder: min(3 + 2*eta_ed/opt,      4 H_k)
double robustness_bound_l1(double eta1, double opt, std::int64_t k);
double robustness_bound_l2(double eta2, double opt, std::int64_t k);
double reorder_bound(double eta_ed, double opt, std::int64_t k);

enum class AggMode { MeanOfRatios, RatioOfSums };

double competitive_ratio(std::span<const std::int64_t> misses,
                         std::span<const std::int64_t> opt, AggMode mode);

} // namespace cachelab
