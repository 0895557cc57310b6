#include "cachelab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cachelab/analysis.hpp"
#include "cachelab/rng.hpp"

namespace cachelab {

const char* to_string(EvictCause cause) {
    switch (cause) {
    case EvictCause::Policy: return "policy";
    case EvictCause::Clean: return "clean";
    case EvictCause::StaleOracle: return "stale_oracle";
    case EvictCause::StaleRandom: return "stale_random";
    }
    return "?";
}

CacheState::CacheState(int k, std::int64_t universe) : capacity_(k) {
    if (k < 1) throw std::invalid_argument("cache capacity must be >= 1");
    if (universe < 0) throw std::invalid_argument("universe must be >= 0");
    ids_.reserve(static_cast<std::size_t>(k));
    resident_.assign(static_cast<std::size_t>(universe), 0);
}

void CacheState::insert(ElementId e) {
    resident_[static_cast<std::size_t>(e)] = 1;
    ids_.insert(std::lower_bound(ids_.begin(), ids_.end(), e), e);
}

void CacheState::erase(ElementId e) {
    resident_[static_cast<std::size_t>(e)] = 0;
    ids_.erase(std::lower_bound(ids_.begin(), ids_.end(), e));
}

std::int64_t RunResult::clean_total() const {
    std::int64_t total = 0;
    for (std::int64_t c : clean_per_phase) total += c;
    return total;
}

std::int64_t RunResult::misses_from(Position first_pos) const {
    const auto it = std::lower_bound(miss_positions.begin(), miss_positions.end(), first_pos);
    return static_cast<std::int64_t>(miss_positions.end() - it);
}

RunResult simulate(Policy& policy, const Trace& trace, std::span<const double> predictions,
                   const SimulateOptions& options) {
    const std::int64_t n = trace.size();
    if (!predictions.empty() && static_cast<std::int64_t>(predictions.size()) != n)
        throw std::invalid_argument("simulate: prediction stream length mismatch");

    RunResult rr;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::int64_t i = 0; i < n; ++i) {
        const Position pos = i + 1;
        const double h = predictions.empty() ? nan : predictions[static_cast<std::size_t>(i)];
        const AccessResult res = policy.access(trace.at(i), pos, h);
        if (res.hit) continue;
        if (res.fill) {
            ++rr.fills;
            if (options.count_fills) {
                ++rr.misses;
                rr.miss_positions.push_back(pos);
            }
        } else {
            ++rr.misses;
            rr.miss_positions.push_back(pos);
        }
        if (res.eviction) rr.evictions.push_back(*res.eviction);
    }
    const auto cpp = policy.clean_per_phase();
    rr.clean_per_phase.assign(cpp.begin(), cpp.end());
    return rr;
}

// --- LRU -----------------------------------------------------------------

LruPolicy::LruPolicy(int k, std::int64_t universe)
    : cache_(k, universe), last_use_(static_cast<std::size_t>(universe), 0) {}

AccessResult LruPolicy::access(ElementId e, Position pos, double) {
    AccessResult r;
    if (cache_.contains(e)) {
        last_use_[static_cast<std::size_t>(e)] = pos;
        r.hit = true;
        return r;
    }
    if (!cache_.full()) {
        cache_.insert(e);
        last_use_[static_cast<std::size_t>(e)] = pos;
        r.fill = true;
        return r;
    }
    ElementId victim = -1;
    Position best = std::numeric_limits<Position>::max();
    for (ElementId id : cache_.ids())
        if (last_use_[static_cast<std::size_t>(id)] < best) {
            best = last_use_[static_cast<std::size_t>(id)];
            victim = id;
        }
    cache_.erase(victim);
    cache_.insert(e);
    last_use_[static_cast<std::size_t>(e)] = pos;
    r.eviction = EvictionEvent{pos, victim, EvictCause::Policy, 0, 0};
    return r;
}

// --- FIFO ----------------------------------------------------------------

FifoPolicy::FifoPolicy(int k, std::int64_t universe)
    : cache_(k, universe), entered_(static_cast<std::size_t>(universe), 0) {}

AccessResult FifoPolicy::access(ElementId e, Position pos, double) {
    AccessResult r;
    if (cache_.contains(e)) {
        r.hit = true;
        return r;
    }
    if (!cache_.full()) {
        cache_.insert(e);
        entered_[static_cast<std::size_t>(e)] = pos;
        r.fill = true;
        return r;
    }
    ElementId victim = -1;
    Position best = std::numeric_limits<Position>::max();
    for (ElementId id : cache_.ids())
        if (entered_[static_cast<std::size_t>(id)] < best) {
            best = entered_[static_cast<std::size_t>(id)];
            victim = id;
        }
    cache_.erase(victim);
    cache_.insert(e);
    entered_[static_cast<std::size_t>(e)] = pos;
    r.eviction = EvictionEvent{pos, victim, EvictCause::Policy, 0, 0};
    return r;
}

// --- Belady --------------------------------------------------------------

BeladyPolicy::BeladyPolicy(int k, std::int64_t universe, const NextArrivals& truth)
    : cache_(k, universe), truth_(&truth), next_use_(static_cast<std::size_t>(universe), 0) {}

AccessResult BeladyPolicy::access(ElementId e, Position pos, double) {
    AccessResult r;
    const Position next = (*truth_)[pos - 1];
    if (cache_.contains(e)) {
        next_use_[static_cast<std::size_t>(e)] = next;
        r.hit = true;
        return r;
    }
    if (!cache_.full()) {
        cache_.insert(e);
        next_use_[static_cast<std::size_t>(e)] = next;
        r.fill = true;
        return r;
    }
    ElementId victim = -1;
    Position best = -1;
    for (ElementId id : cache_.ids())
        if (next_use_[static_cast<std::size_t>(id)] > best) {
            best = next_use_[static_cast<std::size_t>(id)];
            victim = id;
        }
    cache_.erase(victim);
    cache_.insert(e);
    next_use_[static_cast<std::size_t>(e)] = next;
    r.eviction = EvictionEvent{pos, victim, EvictCause::Policy, 0, 0};
    return r;
}

// --- prediction followers ------------------------------------------------

BlindOraclePolicy::BlindOraclePolicy(int k, std::int64_t universe)
    : cache_(k, universe), stored_(static_cast<std::size_t>(universe), 0.0) {}

AccessResult BlindOraclePolicy::access(ElementId e, Position pos, double prediction) {
    stored_[static_cast<std::size_t>(e)] = prediction;
    AccessResult r;
    if (cache_.contains(e)) {
        r.hit = true;
        return r;
    }
    if (!cache_.full()) {
        cache_.insert(e);
        r.fill = true;
        return r;
    }
    ElementId victim = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (ElementId id : cache_.ids())
        if (stored_[static_cast<std::size_t>(id)] > best) {
            best = stored_[static_cast<std::size_t>(id)];
            victim = id;
        }
    cache_.erase(victim);
    cache_.insert(e);
    r.eviction = EvictionEvent{pos, victim, EvictCause::Policy, 0, 0};
    return r;
}

BlindOracleFixedPolicy::BlindOracleFixedPolicy(int k, std::int64_t universe)
    : cache_(k, universe), stored_(static_cast<std::size_t>(universe), 0.0) {}

AccessResult BlindOracleFixedPolicy::access(ElementId e, Position pos, double prediction) {
    stored_[static_cast<std::size_t>(e)] = prediction;
    AccessResult r;
    if (cache_.contains(e)) {
        r.hit = true;
        return r;
    }
    if (!cache_.full()) {
        cache_.insert(e);
        r.fill = true;
        return r;
    }
    // Residents whose predicted return has already passed come first
    // (lowest id); otherwise furthest predicted return.
    ElementId victim = -1;
    for (ElementId id : cache_.ids())
        if (stored_[static_cast<std::size_t>(id)] < static_cast<double>(pos)) {
            victim = id;
            break;
        }
    if (victim < 0) {
        double best = -std::numeric_limits<double>::infinity();
        for (ElementId id : cache_.ids())
            if (stored_[static_cast<std::size_t>(id)] > best) {
                best = stored_[static_cast<std::size_t>(id)];
                victim = id;
            }
    }
    cache_.erase(victim);
    cache_.insert(e);
    r.eviction = EvictionEvent{pos, victim, EvictCause::Policy, 0, 0};
    return r;
}

// --- Marker --------------------------------------------------------------

MarkerPolicy::MarkerPolicy(int k, std::int64_t universe, std::uint64_t seed)
    : cache_(k, universe),
      marked_(static_cast<std::size_t>(universe), 0),
      in_prev_cache_(static_cast<std::size_t>(universe), 0),
      rng_(seed) {
    clean_per_phase_.push_back(0);
}

void MarkerPolicy::begin_phase() {
    ++phase_;
    clean_per_phase_.push_back(0);
    std::fill(in_prev_cache_.begin(), in_prev_cache_.end(), 0);
    for (ElementId id : cache_.ids()) {
        in_prev_cache_[static_cast<std::size_t>(id)] = 1;
        marked_[static_cast<std::size_t>(id)] = 0;
    }
    marked_count_ = 0;
}

AccessResult MarkerPolicy::access(ElementId e, Position pos, double) {
    AccessResult r;
    const auto idx = static_cast<std::size_t>(e);
    if (cache_.contains(e)) {
        if (!marked_[idx]) {
            marked_[idx] = 1;
            ++marked_count_;
        }
        r.hit = true;
        return r;
    }
    if (!cache_.full()) {
        cache_.insert(e);
        marked_[idx] = 1;
        ++marked_count_;
        ++clean_per_phase_.back(); // nothing is stale before the first phase turn
        r.fill = true;
        return r;
    }
    if (marked_count_ == cache_.capacity()) begin_phase();
    if (!in_prev_cache_[idx]) ++clean_per_phase_.back();

    std::vector<ElementId> unmarked;
    unmarked.reserve(cache_.ids().size());
    for (ElementId id : cache_.ids())
        if (!marked_[static_cast<std::size_t>(id)]) unmarked.push_back(id);
    const ElementId victim = unmarked[rng_.bounded(unmarked.size())];

    cache_.erase(victim);
    cache_.insert(e);
    marked_[idx] = 1;
    ++marked_count_;
    r.eviction = EvictionEvent{pos, victim, EvictCause::Policy, phase_, 0};
    return r;
}

// --- Predictive marker ----------------------------------------------------

PredictiveMarkerPolicy::PredictiveMarkerPolicy(int k, std::int64_t universe,
                                               const PredictiveMarkerConfig& config)
    : cache_(k, universe),
      stored_(static_cast<std::size_t>(universe), 0.0),
      rng_(config.seed) {
    if (config.threshold) {
        threshold_ = *config.threshold;
    } else {
        if (!(config.gamma > 0))
            throw std::invalid_argument("predictive marker: gamma must be > 0");
        threshold_ = config.gamma * harmonic(k);
    }
    state_.marked.assign(static_cast<std::size_t>(universe), 0);
    state_.in_prev_cache.assign(static_cast<std::size_t>(universe), 0);
    state_.chain_of.assign(static_cast<std::size_t>(universe), -1);
    clean_per_phase_.push_back(0);
}

void PredictiveMarkerPolicy::begin_phase() {
    ++state_.phase;
    clean_per_phase_.push_back(0);
    for (const auto& chain : state_.chains)
        if (chain.representative >= 0)
            state_.chain_of[static_cast<std::size_t>(chain.representative)] = -1;
    state_.chains.clear();
    state_.clean_count = 0;
    std::fill(state_.in_prev_cache.begin(), state_.in_prev_cache.end(), 0);
    for (ElementId id : cache_.ids()) {
        state_.in_prev_cache[static_cast<std::size_t>(id)] = 1;
        state_.marked[static_cast<std::size_t>(id)] = 0;
    }
    state_.marked_count = 0;
}

ElementId PredictiveMarkerPolicy::pick_oracle_victim() const {
    ElementId victim = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (ElementId id : cache_.ids()) {
        if (state_.marked[static_cast<std::size_t>(id)]) continue;
        if (stored_[static_cast<std::size_t>(id)] > best) {
            best = stored_[static_cast<std::size_t>(id)];
            victim = id;
        }
    }
    return victim;
}

ElementId PredictiveMarkerPolicy::pick_random_victim() {
    std::vector<ElementId> unmarked;
    unmarked.reserve(cache_.ids().size());
    for (ElementId id : cache_.ids())
        if (!state_.marked[static_cast<std::size_t>(id)]) unmarked.push_back(id);
    return unmarked[rng_.bounded(unmarked.size())];
}

AccessResult PredictiveMarkerPolicy::access(ElementId e, Position pos, double prediction) {
    const auto idx = static_cast<std::size_t>(e);
    stored_[idx] = prediction; // latest prediction wins
    AccessResult r;
    if (cache_.contains(e)) {
        if (!state_.marked[idx]) {
            state_.marked[idx] = 1;
            ++state_.marked_count;
        }
        r.hit = true;
        return r;
    }
    if (!cache_.full()) {
        cache_.insert(e);
        state_.marked[idx] = 1;
        ++state_.marked_count;
        ++state_.clean_count;
        ++clean_per_phase_.back();
        state_.chains.push_back(PhaseState::Chain{1, -1});
        r.fill = true;
        return r;
    }

    if (state_.marked_count == cache_.capacity()) begin_phase();

    const bool clean = !state_.in_prev_cache[idx];
    std::int64_t chain_idx;
    if (clean) {
        ++state_.clean_count;
        ++clean_per_phase_.back();
        state_.chains.push_back(PhaseState::Chain{1, -1});
        chain_idx = static_cast<std::int64_t>(state_.chains.size()) - 1;
    } else {
        chain_idx = state_.chain_of[idx];
        if (chain_idx < 0)
            throw std::logic_error("predictive marker: stale arrival without owning chain");
        state_.chain_of[idx] = -1; // the representative came back
        ++state_.chains[static_cast<std::size_t>(chain_idx)].length;
    }

    auto& chain = state_.chains[static_cast<std::size_t>(chain_idx)];
    ElementId victim;
    EvictCause cause;
    if (static_cast<double>(chain.length) <= threshold_) {
        victim = pick_oracle_victim();
        cause = clean ? EvictCause::Clean : EvictCause::StaleOracle;
    } else {
        victim = pick_random_victim();
        cause = clean ? EvictCause::Clean : EvictCause::StaleRandom;
    }

    if (state_.chain_of[static_cast<std::size_t>(victim)] != -1)
        throw std::logic_error("predictive marker: victim already represents a chain");
    cache_.erase(victim);
    cache_.insert(e);
    state_.marked[idx] = 1;
    ++state_.marked_count;
    chain.representative = victim;
    state_.chain_of[static_cast<std::size_t>(victim)] = chain_idx;
    r.eviction = EvictionEvent{pos, victim, cause, state_.phase, chain_idx + 1};
    return r;
}

// --- whole-trace drivers ---------------------------------------------------

RunResult belady(const Trace& trace, int k, const SimulateOptions& options) {
    const NextArrivals truth = compute_next_arrivals(trace);
    BeladyPolicy policy(k, trace.universe(), truth);
    return simulate(policy, trace, {}, options);
}

RunResult lru(const Trace& trace, int k, const SimulateOptions& options) {
    LruPolicy policy(k, trace.universe());
    return simulate(policy, trace, {}, options);
}

RunResult fifo(const Trace& trace, int k, const SimulateOptions& options) {
    FifoPolicy policy(k, trace.universe());
    return simulate(policy, trace, {}, options);
}

RunResult marker(const Trace& trace, int k, std::uint64_t seed, const SimulateOptions& options) {
    MarkerPolicy policy(k, trace.universe(), seed);
    return simulate(policy, trace, {}, options);
}

namespace {

void require_predictions(const Trace& trace, std::span<const double> predictions,
                         const char* who) {
    if (trace.size() > 0 && predictions.empty())
        throw std::invalid_argument(std::string(who) + ": prediction stream required");
}

} // namespace

RunResult blind_oracle(const Trace& trace, int k, std::span<const double> predictions,
                       const SimulateOptions& options) {
    require_predictions(trace, predictions, "blind_oracle");
    BlindOraclePolicy policy(k, trace.universe());
    return simulate(policy, trace, predictions, options);
}

RunResult blind_oracle_fixed(const Trace& trace, int k, std::span<const double> predictions,
                             const SimulateOptions& options) {
    require_predictions(trace, predictions, "blind_oracle_fixed");
    BlindOracleFixedPolicy policy(k, trace.universe());
    return simulate(policy, trace, predictions, options);
}

RunResult predictive_marker(const Trace& trace, int k, std::span<const double> predictions,
                            const PredictiveMarkerConfig& config,
                            const SimulateOptions& options) {
    require_predictions(trace, predictions, "predictive_marker");
    PredictiveMarkerPolicy policy(k, trace.universe(), config);
    return simulate(policy, trace, predictions, options);
}

CombineOutcome combine(const Trace& trace, int k, Policy& a, Policy& b,
                       std::span<const double> predictions, const SimulateOptions& options) {
    const std::int64_t n = trace.size();
    if (!predictions.empty() && static_cast<std::int64_t>(predictions.size()) != n)
        throw std::invalid_argument("combine: prediction stream length mismatch");

    CombineOutcome out;
    CacheState real(k, trace.universe());
    bool following_a = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::int64_t i = 0; i < n; ++i) {
        const Position pos = i + 1;
        const ElementId e = trace.at(i);
        const double h = predictions.empty() ? nan : predictions[static_cast<std::size_t>(i)];
        const AccessResult ra = a.access(e, pos, h);
        const AccessResult rb = b.access(e, pos, h);
        if (!ra.hit && (options.count_fills || !ra.fill)) ++out.cost_a;
        if (!rb.hit && (options.count_fills || !rb.fill)) ++out.cost_b;

        if (real.contains(e)) {
            // hit
        } else if (!real.full()) {
            real.insert(e);
            ++out.alg.fills;
            if (options.count_fills) {
                ++out.alg.misses;
                out.alg.miss_positions.push_back(pos);
            }
        } else {
            const Policy& followed = following_a ? a : b;
            // Lowest-id resident the followed simulation has already
            // dropped; nonempty because the followed cache now holds e.
            ElementId victim = -1;
            for (ElementId id : real.ids())
                if (!followed.cache().contains(id)) {
                    victim = id;
                    break;
                }
            if (victim < 0)
                throw std::logic_error("combine: no reconciliation victim available");
            real.erase(victim);
            real.insert(e);
            ++out.alg.misses;
            out.alg.miss_positions.push_back(pos);
            out.alg.evictions.push_back(EvictionEvent{pos, victim, EvictCause::Policy, 0, 0});
        }

        if (following_a) {
            if (out.cost_a > 0 && out.cost_a >= 2 * out.cost_b) {
                following_a = false;
                ++out.switches;
            }
        } else {
            if (out.cost_b > 0 && out.cost_b >= 2 * out.cost_a) {
                following_a = true;
                ++out.switches;
            }
        }
    }
    return out;
}

} // namespace cachelab
