#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cachelab/rng.hpp"
#include "cachelab/trace.hpp"

namespace cachelab {

enum class EvictCause : std::uint8_t {
    Policy,      // non-marking policies
    Clean,       // eviction triggered by a clean arrival
    StaleOracle, // stale arrival, chain within budget, prediction-based pick
    StaleRandom, // stale arrival, chain over budget, uniform pick
};

const char* to_string(EvictCause cause);

struct EvictionEvent {
    Position position = 0;
    ElementId victim = -1;
    EvictCause cause = EvictCause::Policy;
    std::int64_t phase = 0; // 0 outside marking policies
    std::int64_t chain = 0; // 1-based chain index within the phase, 0 if n/a
};

struct AccessResult {
    bool hit = false;
    bool fill = false; // placed while the cache was below capacity
    std::optional<EvictionEvent> eviction;
};

// Fixed-capacity resident set over dense ids, kept sorted by id so that
// scans resolve ties deterministically toward the lowest id.
class CacheState {
public:
    CacheState(int k, std::int64_t universe);

    bool contains(ElementId e) const { return resident_[static_cast<std::size_t>(e)]; }
    bool full() const { return static_cast<int>(ids_.size()) == capacity_; }
    int capacity() const { return capacity_; }
    const std::vector<ElementId>& ids() const { return ids_; } // ascending
    void insert(ElementId e);
    void erase(ElementId e);

private:
    int capacity_;
    std::vector<ElementId> ids_;
    std::vector<char> resident_;
};

// Online eviction policy; sees only the current request and its
// prediction. One instance per run.
class Policy {
public:
    virtual ~Policy() = default;
    virtual AccessResult access(ElementId e, Position pos, double prediction) = 0;
    virtual const CacheState& cache() const = 0;
    // Clean arrivals per completed-or-open phase; empty for non-marking
    // policies.
    virtual std::span<const std::int64_t> clean_per_phase() const { return {}; }
};

struct RunResult {
    std::int64_t misses = 0; // includes compulsory fills unless count_fills=false
    std::int64_t fills = 0;
    std::vector<Position> miss_positions;
    std::vector<EvictionEvent> evictions;
    std::vector<std::int64_t> clean_per_phase;

    std::int64_t clean_total() const;
    // Misses at positions >= first_pos (1-indexed); used to score
    // adversarial bodies separately from their warm-up.
    std::int64_t misses_from(Position first_pos) const;
};

struct SimulateOptions {
    bool count_fills = true; // count compulsory fills as misses
};

RunResult simulate(Policy& policy, const Trace& trace,
                   std::span<const double> predictions = {},
                   const SimulateOptions& options = {});

// --- concrete policies -------------------------------------------------

class LruPolicy final : public Policy {
public:
    LruPolicy(int k, std::int64_t universe);
    AccessResult access(ElementId e, Position pos, double prediction) override;
    const CacheState& cache() const override { return cache_; }

private:
    CacheState cache_;
    std::vector<Position> last_use_;
};

class FifoPolicy final : public Policy {
public:
    FifoPolicy(int k, std::int64_t universe);
    AccessResult access(ElementId e, Position pos, double prediction) override;
    const CacheState& cache() const override { return cache_; }

private:
    CacheState cache_;
    std::vector<Position> entered_;
};

// Offline optimum: evicts the resident whose next request is furthest in
// the future (ties toward the lowest id).
class BeladyPolicy final : public Policy {
public:
    BeladyPolicy(int k, std::int64_t universe, const NextArrivals& truth);
    AccessResult access(ElementId e, Position pos, double prediction) override;
    const CacheState& cache() const override { return cache_; }

private:
    CacheState cache_;
    const NextArrivals* truth_;
    std::vector<Position> next_use_;
};

// Trusts predictions unconditionally: evicts the resident with the
// furthest stored predicted arrival.
class BlindOraclePolicy final : public Policy {
public:
    BlindOraclePolicy(int k, std::int64_t universe);
    AccessResult access(ElementId e, Position pos, double prediction) override;
    const CacheState& cache() const override { return cache_; }

private:
    CacheState cache_;
    std::vector<double> stored_;
};

// Like BlindOraclePolicy but prefers residents whose predicted arrival
// has already passed (lowest id among them).
class BlindOracleFixedPolicy final : public Policy {
public:
    BlindOracleFixedPolicy(int k, std::int64_t universe);
    AccessResult access(ElementId e, Position pos, double prediction) override;
    const CacheState& cache() const override { return cache_; }

private:
    CacheState cache_;
    std::vector<double> stored_;
};

// Classic randomized marking: phases end when a miss arrives with every
// resident marked; victims are uniform over unmarked residents.
class MarkerPolicy final : public Policy {
public:
    MarkerPolicy(int k, std::int64_t universe, std::uint64_t seed);
    AccessResult access(ElementId e, Position pos, double prediction) override;
    const CacheState& cache() const override { return cache_; }
    std::span<const std::int64_t> clean_per_phase() const override { return clean_per_phase_; }

private:
    void begin_phase();

    CacheState cache_;
    std::vector<char> marked_;
    std::vector<char> in_prev_cache_;
    int marked_count_ = 0;
    std::int64_t phase_ = 1;
    std::vector<std::int64_t> clean_per_phase_;
    // random pick among unmarked residents in ascending-id order
    Rng rng_;
};

// Marking with prediction-guided tie-breaking rationed by clean chains.
// Each clean arrival opens a chain; a stale arrival (an element that was
// resident at phase start, got evicted, and returned) extends the chain
// it is the representative of. While a chain's length stays within
// `threshold` the victim is the unmarked resident with the furthest
// stored prediction, afterwards it is uniform over unmarked residents.
// threshold = H_k recovers the prediction-rationing default, 0 degrades
// to MarkerPolicy, k never randomizes (and with recency predictions
// reproduces LRU decision-for-decision).
struct PredictiveMarkerConfig {
    double gamma = 1.0;                    // threshold = gamma * H_k ...
    std::optional<double> threshold;       // ... unless given explicitly
    std::uint64_t seed = 0;
    bool operator==(const PredictiveMarkerConfig&) const = default;
};

struct PhaseState {
    struct Chain {
        std::int64_t length = 1;
        ElementId representative = -1; // -1 until the first eviction
    };
    std::int64_t phase = 1;
    std::int64_t clean_count = 0;
    std::vector<Chain> chains;             // chains.size() == clean_count
    std::vector<char> marked;
    std::vector<char> in_prev_cache;       // the possibly-stale set
    std::vector<std::int64_t> chain_of;    // representative -> chain idx, -1 none
    int marked_count = 0;
};

class PredictiveMarkerPolicy final : public Policy {
public:
    PredictiveMarkerPolicy(int k, std::int64_t universe, const PredictiveMarkerConfig& config);
    AccessResult access(ElementId e, Position pos, double prediction) override;
    const CacheState& cache() const override { return cache_; }
    std::span<const std::int64_t> clean_per_phase() const override { return clean_per_phase_; }
    double threshold() const { return threshold_; }

private:
    void begin_phase();
    ElementId pick_oracle_victim() const;
    ElementId pick_random_victim();

    CacheState cache_;
    PhaseState state_;
    std::vector<double> stored_;
    std::vector<std::int64_t> clean_per_phase_;
    double threshold_ = 0.0;
    Rng rng_;
};

// --- whole-trace drivers (spec-level operations) ------------------------

RunResult belady(const Trace& trace, int k, const SimulateOptions& = {});
RunResult lru(const Trace& trace, int k, const SimulateOptions& = {});
RunResult fifo(const Trace& trace, int k, const SimulateOptions& = {});
RunResult marker(const Trace& trace, int k, std::uint64_t seed, const SimulateOptions& = {});
RunResult blind_oracle(const Trace& trace, int k, std::span<const double> predictions,
                       const SimulateOptions& = {});
RunResult blind_oracle_fixed(const Trace& trace, int k, std::span<const double> predictions,
                             const SimulateOptions& = {});
RunResult predictive_marker(const Trace& trace, int k, std::span<const double> predictions,
                            const PredictiveMarkerConfig& config = {},
                            const SimulateOptions& = {});

// Runs A and B in lockstep and follows one of them, switching whenever
// the followed simulation's miss count reaches double the other's. The
// real cache converges to the followed one lazily: a divergent resident
// costs one extra miss when it is requested.
struct CombineOutcome {
    RunResult alg;
    std::int64_t cost_a = 0;
    std::int64_t cost_b = 0;
    std::int64_t switches = 0;
};

CombineOutcome combine(const Trace& trace, int k, Policy& a, Policy& b,
                       std::span<const double> predictions = {},
                       const SimulateOptions& = {});

} // namespace cachelab
