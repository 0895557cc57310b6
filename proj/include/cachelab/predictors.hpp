#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cachelab/trace.hpp"

namespace cachelab {

// Issues one next-arrival prediction per request, queried online and in
// order. Sources carry per-run state (arrival histories, noise stream);
// use one instance per simulation run.
class PredictionSource {
public:
    virtual ~PredictionSource() = default;
    virtual double predict(ElementId element, Position position) = 0;
};

// h_i = y_i.
std::unique_ptr<PredictionSource> make_perfect_predictor(const NextArrivals& truth);

// h_i = y_i + eps, eps ~ exp(sigma * N(0,1)) i.i.d. per request.
// sigma == 0 gives the constant bias h_i = y_i + 1.
std::unique_ptr<PredictionSource> make_lognormal_predictor(const NextArrivals& truth,
                                                           double sigma,
                                                           std::uint64_t seed);

// h_i = -i: the element seen longest ago carries the largest prediction,
// so furthest-prediction eviction reduces to least-recently-used.
std::unique_ptr<PredictionSource> make_recency_predictor();

// Repeat-consumption model: each past arrival at gap g contributes weight
// (g + beta)^-alpha * exp(-g / tau); the normalized weight mass is the
// reappearance probability p and h = t + 1/p. Probabilities are clamped
// to [floor, 1]; elements with no prior history use the prior p0.
struct PlecoParams {
    double alpha = 1.8;
    double beta = 1.0;
    double tau = 5000.0;
    double prior = 0.1;           // p0 for first-ever arrivals
    double floor = 1e-6;          // lower clamp, keeps 1/p finite
    std::int64_t history_cap = 512; // most recent arrivals consulted

    void validate() const;
};

std::unique_ptr<PredictionSource> make_pleco_predictor(const PlecoParams& params);

// Evaluate the recency weight mass for one element given its prior
// arrival positions (exposed for tests and the CLI).
double pleco_probability(const PlecoParams& params, const FeatureView& view);

// Runs the source over a trace and returns the full prediction stream.
std::vector<double> materialize_predictions(PredictionSource& source, const Trace& trace);

struct LossReport {
    std::int64_t eta_c = 0; // predictions wrong after rounding to nearest int
    double eta_1 = 0.0;     // sum |y - h|
    double eta_2 = 0.0;     // sum (y - h)^2
    std::int64_t eta_ed = 0; // reorder distance, see below
    std::int64_t n = 0;
};

// All four losses between a prediction stream and ground truth.
// eta_ed orders the per-request (element, occurrence) pairs once by true
// next-arrival time and once by predicted time (ties by element id, then
// truth) and reports the insert/delete edit distance between the two
// orders, i.e. 2 * (n - LCS).
LossReport losses(const Trace& trace, const NextArrivals& truth,
                  std::span<const double> predictions);

} // namespace cachelab
