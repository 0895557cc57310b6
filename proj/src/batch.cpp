#include "cachelab/batch.hpp"

#include <bit>
#include <stdexcept>

#include "cachelab/analysis.hpp"
#include "cachelab/policies.hpp"
#include "cachelab/rng.hpp"

namespace cachelab {

const char* to_string(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::Lru: return "lru";
    case PolicyKind::Fifo: return "fifo";
    case PolicyKind::Marker: return "marker";
    case PolicyKind::Belady: return "belady";
    case PolicyKind::Blind: return "blind";
    case PolicyKind::BlindFixed: return "blind_fixed";
    case PolicyKind::PredictiveMarker: return "pmarker";
    }
    return "?";
}

const char* to_string(PredictorKind kind) {
    switch (kind) {
    case PredictorKind::None: return "none";
    case PredictorKind::Perfect: return "perfect";
    case PredictorKind::Lognormal: return "lognormal";
    case PredictorKind::Pleco: return "pleco";
    case PredictorKind::Recency: return "recency";
    }
    return "?";
}

std::optional<PolicyKind> parse_policy(const std::string& name) {
    if (name == "lru") return PolicyKind::Lru;
    if (name == "fifo") return PolicyKind::Fifo;
    if (name == "marker") return PolicyKind::Marker;
    if (name == "belady" || name == "opt") return PolicyKind::Belady;
    if (name == "blind") return PolicyKind::Blind;
    if (name == "blind_fixed" || name == "blind-fixed") return PolicyKind::BlindFixed;
    if (name == "pmarker" || name == "predictive_marker") return PolicyKind::PredictiveMarker;
    return std::nullopt;
}

std::optional<PredictorKind> parse_predictor(const std::string& name) {
    if (name == "none") return PredictorKind::None;
    if (name == "perfect") return PredictorKind::Perfect;
    if (name == "lognormal") return PredictorKind::Lognormal;
    if (name == "pleco") return PredictorKind::Pleco;
    if (name == "recency") return PredictorKind::Recency;
    return std::nullopt;
}

namespace {

bool policy_needs_predictions(PolicyKind kind) {
    return kind == PolicyKind::Blind || kind == PolicyKind::BlindFixed ||
           kind == PolicyKind::PredictiveMarker;
}

std::uint64_t run_counter(std::int64_t trace_idx, std::uint64_t seed_idx, double sigma) {
    std::uint64_t c = static_cast<std::uint64_t>(trace_idx) * 0x100000001b3ULL + seed_idx;
    c ^= std::bit_cast<std::uint64_t>(sigma) * 0x9e3779b97f4a7c15ULL;
    return c;
}

RunRecord execute(const IngestedTrace& entry, const NextArrivals& truth, std::int64_t opt,
                  const RunSpec& spec, const BatchConfig& config) {
    const Trace& trace = entry.trace;
    RunRecord rec;
    rec.trace_id = entry.id;
    rec.policy = spec.policy;
    rec.predictor = spec.predictor;
    rec.sigma = spec.sigma;
    rec.gamma = spec.gamma;
    rec.threshold_k = spec.threshold_k;
    rec.seed_idx = spec.seed_idx;
    rec.k = config.k;
    rec.n = trace.size();
    rec.universe = trace.universe();
    rec.opt = opt;

    std::vector<double> preds;
    if (spec.predictor != PredictorKind::None)
        preds = predictions_for(trace, truth, spec.predictor, spec.sigma, config,
                                spec.trace_idx, spec.seed_idx);
    if (policy_needs_predictions(spec.policy) && preds.empty() && trace.size() > 0)
        throw std::invalid_argument("run_batch: policy requires a predictor");

    const SimulateOptions sim{config.count_fills};
    const std::uint64_t counter = run_counter(spec.trace_idx, spec.seed_idx, spec.sigma);
    RunResult result;
    switch (spec.policy) {
    case PolicyKind::Lru: result = lru(trace, config.k, sim); break;
    case PolicyKind::Fifo: result = fifo(trace, config.k, sim); break;
    case PolicyKind::Belady: result = belady(trace, config.k, sim); break;
    case PolicyKind::Marker:
        result = marker(trace, config.k,
                        derive_seed(config.master_seed, "policy.marker", counter), sim);
        break;
    case PolicyKind::Blind: result = blind_oracle(trace, config.k, preds, sim); break;
    case PolicyKind::BlindFixed:
        result = blind_oracle_fixed(trace, config.k, preds, sim);
        break;
    case PolicyKind::PredictiveMarker: {
        PredictiveMarkerConfig pm;
        pm.seed = derive_seed(config.master_seed, "policy.pmarker", counter);
        if (spec.threshold_k)
            pm.threshold = static_cast<double>(config.k);
        else
            pm.gamma = spec.gamma;
        result = predictive_marker(trace, config.k, preds, pm, sim);
        break;
    }
    }

    rec.misses = result.misses;
    rec.clean_total = result.clean_total();
    rec.ratio = static_cast<double>(rec.misses) / static_cast<double>(opt);
    if (!preds.empty()) {
        rec.loss = losses(trace, truth, preds);
        const double dopt = static_cast<double>(opt);
        rec.bound_t2 = robustness_bound_l1(rec.loss.eta_1, dopt, config.k);
        const double gamma_eff =
            spec.policy == PolicyKind::PredictiveMarker
                ? (spec.threshold_k ? static_cast<double>(config.k) / harmonic(config.k)
                                    : spec.gamma)
                : 1.0;
        rec.bound_t4 = gamma_spread_bound(rec.loss.eta_1, dopt, config.k, gamma_eff, LossKind::L1);
        rec.bound_t5 = reorder_bound(static_cast<double>(rec.loss.eta_ed), dopt, config.k);
        rec.has_bounds = true;
    }
    return rec;
}

} // namespace

std::vector<double> predictions_for(const Trace& trace, const NextArrivals& truth,
                                    PredictorKind kind, double sigma,
                                    const BatchConfig& config, std::int64_t trace_idx,
                                    std::uint64_t seed_idx) {
    std::unique_ptr<PredictionSource> source;
    switch (kind) {
    case PredictorKind::None: return {};
    case PredictorKind::Perfect: source = make_perfect_predictor(truth); break;
    case PredictorKind::Lognormal:
        source = make_lognormal_predictor(
            truth, sigma,
            derive_seed(config.master_seed, "predictor.lognormal",
                        run_counter(trace_idx, seed_idx, sigma)));
        break;
    case PredictorKind::Pleco: source = make_pleco_predictor(config.pleco); break;
    case PredictorKind::Recency: source = make_recency_predictor(); break;
    }
    return materialize_predictions(*source, trace);
}

std::vector<RunRecord> run_batch(std::span<const IngestedTrace> traces,
                                 std::span<const RunSpec> specs, const BatchConfig& config,
                                 bool parallel) {
    if (config.k < 1) throw std::invalid_argument("run_batch: k must be >= 1");
    for (const auto& spec : specs) {
        if (spec.trace_idx < 0 || spec.trace_idx >= static_cast<std::int64_t>(traces.size()))
            throw std::invalid_argument("run_batch: trace index out of range");
        if (traces[static_cast<std::size_t>(spec.trace_idx)].trace.size() == 0)
            throw std::invalid_argument("run_batch: empty trace");
    }

    // Shared per-trace precomputation: ground-truth labels and optimum.
    const auto trace_count = static_cast<std::int64_t>(traces.size());
    std::vector<NextArrivals> truths(static_cast<std::size_t>(trace_count));
    std::vector<std::int64_t> opts(static_cast<std::size_t>(trace_count), 0);
    std::vector<char> used(static_cast<std::size_t>(trace_count), 0);
    for (const auto& spec : specs) used[static_cast<std::size_t>(spec.trace_idx)] = 1;

    const SimulateOptions sim{config.count_fills};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::int64_t t = 0; t < trace_count; ++t) {
        if (!used[static_cast<std::size_t>(t)]) continue;
        const Trace& trace = traces[static_cast<std::size_t>(t)].trace;
        truths[static_cast<std::size_t>(t)] = compute_next_arrivals(trace);
        opts[static_cast<std::size_t>(t)] = belady(trace, config.k, sim).misses;
    }

    const auto spec_count = static_cast<std::int64_t>(specs.size());
    std::vector<RunRecord> records(static_cast<std::size_t>(spec_count));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::int64_t i = 0; i < spec_count; ++i) {
        const RunSpec& spec = specs[static_cast<std::size_t>(i)];
        const auto t = static_cast<std::size_t>(spec.trace_idx);
        records[static_cast<std::size_t>(i)] =
            execute(traces[t], truths[t], opts[t], spec, config);
    }
    return records;
}

} // namespace cachelab
