#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cachelab/ingest.hpp"
#include "cachelab/predictors.hpp"
#include "cachelab/trace.hpp"

namespace cachelab {

enum class PolicyKind { Lru, Fifo, Marker, Belady, Blind, BlindFixed, PredictiveMarker };
enum class PredictorKind { None, Perfect, Lognormal, Pleco, Recency };

const char* to_string(PolicyKind kind);
const char* to_string(PredictorKind kind);
std::optional<PolicyKind> parse_policy(const std::string& name);
std::optional<PredictorKind> parse_predictor(const std::string& name);

// One (trace, policy, predictor, sigma, seed) cell of an experiment.
struct RunSpec {
    std::int64_t trace_idx = 0;
    PolicyKind policy = PolicyKind::Lru;
    PredictorKind predictor = PredictorKind::None;
    double sigma = 0.0;        // lognormal noise level
    double gamma = 1.0;        // chain budget multiplier
    bool threshold_k = false;  // use a flat chain budget of k instead
    std::uint64_t seed_idx = 0;
};

struct RunRecord {
    std::string trace_id;
    PolicyKind policy = PolicyKind::Lru;
    PredictorKind predictor = PredictorKind::None;
    double sigma = 0.0;
    double gamma = 1.0;
    bool threshold_k = false;
    std::uint64_t seed_idx = 0;
    int k = 0;
    std::int64_t n = 0;
    std::int64_t universe = 0;
    std::int64_t misses = 0;
    std::int64_t opt = 0;
    double ratio = 0.0;
    LossReport loss;       // zeros when no predictor is attached
    double bound_t2 = 0.0; // min(2 + 2 sqrt(4 eta1/opt + 1), 4 H_k)
    double bound_t4 = 0.0; // chain-budget trade-off bound at the run's gamma
    double bound_t5 = 0.0; // min(3 + 2 eta_ed/opt, 4 H_k)
    bool has_bounds = false;
    std::int64_t clean_total = 0;
};

struct BatchConfig {
    int k = 10;
    std::uint64_t master_seed = 1;
    bool count_fills = true;
    PlecoParams pleco;
};

// Executes every spec and returns records in spec order. `parallel`
// selects the OpenMP path; the serial path is the reference the tests
// compare against, and both produce identical records (each run derives
// its own seeds from (master, tags, counters)).
std::vector<RunRecord> run_batch(std::span<const IngestedTrace> traces,
                                 std::span<const RunSpec> specs, const BatchConfig& config,
                                 bool parallel);

// Builds the prediction stream a spec would see (exposed for the CLI and
// tests; deterministic).
std::vector<double> predictions_for(const Trace& trace, const NextArrivals& truth,
                                    PredictorKind kind, double sigma,
                                    const BatchConfig& config, std::int64_t trace_idx,
                                    std::uint64_t seed_idx);

} // namespace cachelab
