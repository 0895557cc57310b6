#pragma once

#include <cstdint>
#include <vector>

#include "cachelab/trace.hpp"

namespace cachelab {

// Deterministic synthetic workloads. Both are pure functions of their
// arguments, seed included.
Trace gen_uniform_trace(std::int64_t universe, std::int64_t n, std::uint64_t seed);
Trace gen_zipf_trace(std::int64_t universe, std::int64_t n, double s, std::uint64_t seed);

// A hand-built trace together with the prediction stream that defeats a
// particular policy. `predictions[i]` is the prediction issued at request
// i+1 (1-indexed positions, global over warm-up plus body). Assertions on
// miss counts apply to the post-warm-up suffix.
struct AdversarialInstance {
    Trace trace;
    std::vector<double> predictions;
    std::int64_t warmup = 0; // number of leading warm-up requests
    int k = 0;               // cache size the construction targets
};

// k=2, elements {a,b,c}: after warm-up [a,b] the body is c,b,c,b,... of
// length T. Every prediction is exact except a's, which claims a returns
// right where c first arrives, so the furthest-prediction eviction rule
// never lets go of a. Requires T >= 4.
AdversarialInstance gen_blind_counterexample(std::int64_t t_len);

// k=3, elements {a,b,c,d}: after warm-up [a,b,c] the body of length T has
// c at local times 2^r+1 (r odd), d at 2^r+1 (r even), b only at time T
// and a everywhere else. Predictions for a,b are exact; c,d are always
// predicted as already due (their own arrival position), which makes them
// the permanent victims of the expired-prediction rule. Requires T >= 16.
AdversarialInstance gen_fixed_blind_counterexample(std::int64_t t_len);

} // namespace cachelab
