#include "cachelab/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "cachelab/rng.hpp"

namespace cachelab {

namespace {

class PerfectPredictor final : public PredictionSource {
public:
    explicit PerfectPredictor(const NextArrivals& truth) : truth_(&truth) {}

    double predict(ElementId, Position position) override {
        return static_cast<double>((*truth_)[position - 1]);
    }

private:
    const NextArrivals* truth_;
};

class LognormalPredictor final : public PredictionSource {
public:
    LognormalPredictor(const NextArrivals& truth, double sigma, std::uint64_t seed)
        : truth_(&truth), sigma_(sigma), rng_(derive_seed(seed, "pred.lognormal")) {
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("lognormal predictor: sigma must be finite and >= 0");
    }

    double predict(ElementId, Position position) override {
        return static_cast<double>((*truth_)[position - 1]) + rng_.lognormal(sigma_);
    }

private:
    const NextArrivals* truth_;
    double sigma_;
    Rng rng_;
};

class RecencyPredictor final : public PredictionSource {
public:
    double predict(ElementId, Position position) override {
        return -static_cast<double>(position);
    }
};

class PlecoPredictor final : public PredictionSource {
public:
    explicit PlecoPredictor(const PlecoParams& params) : params_(params) {
        params_.validate();
        // Normalizer: total weight of a single arrival over all future gaps.
        // Stops once the geometric tail bound is negligible.
        total_weight_ = 0.0;
        for (std::int64_t g = 1; g <= kNormHorizon; ++g) {
            const double gap = static_cast<double>(g);
            total_weight_ += weight(gap);
            if (g >= 64) {
                const double tail = std::exp(-gap / params_.tau) *
                                    std::pow(gap + params_.beta, 1.0 - params_.alpha);
                if (tail < total_weight_ * 1e-12) break;
            }
        }
    }

    double predict(ElementId element, Position position) override {
        auto& hist = history_[element];
        const bool first_arrival = hist.empty();
        hist.push_back(position);
        double p = first_arrival ? params_.prior : mass(hist, position);
        if (static_cast<std::int64_t>(hist.size()) > params_.history_cap)
            hist.erase(hist.begin());
        p = std::clamp(p, params_.floor, 1.0);
        return static_cast<double>(position) + 1.0 / p;
    }

    double mass(const std::vector<Position>& hist, Position now) const {
        double sum = 0.0;
        for (Position t : hist) sum += weight(static_cast<double>(now + 1 - t));
        return sum / total_weight_;
    }

private:
    static constexpr std::int64_t kNormHorizon = 100000;

    double weight(double gap) const {
        return std::pow(gap + params_.beta, -params_.alpha) * std::exp(-gap / params_.tau);
    }

    PlecoParams params_;
    double total_weight_ = 1.0;
    std::unordered_map<ElementId, std::vector<Position>> history_;
};

} // namespace

void PlecoParams::validate() const {
    if (!(alpha > 0) || !(beta > 0) || !(tau > 0) || !(prior > 0) || !(floor > 0) ||
        history_cap < 1)
        throw std::invalid_argument("pleco predictor: parameters must be positive");
}

std::unique_ptr<PredictionSource> make_perfect_predictor(const NextArrivals& truth) {
    return std::make_unique<PerfectPredictor>(truth);
}

std::unique_ptr<PredictionSource> make_lognormal_predictor(const NextArrivals& truth,
                                                           double sigma,
                                                           std::uint64_t seed) {
    return std::make_unique<LognormalPredictor>(truth, sigma, seed);
}

std::unique_ptr<PredictionSource> make_recency_predictor() {
    return std::make_unique<RecencyPredictor>();
}

std::unique_ptr<PredictionSource> make_pleco_predictor(const PlecoParams& params) {
    return std::make_unique<PlecoPredictor>(params);
}

double pleco_probability(const PlecoParams& params, const FeatureView& view) {
    PlecoPredictor model(params);
    std::vector<Position> hist(view.history.begin(), view.history.end());
    if (hist.empty()) return params.prior;
    const double raw = model.mass(hist, view.position);
    return std::clamp(raw, params.floor, 1.0);
}

std::vector<double> materialize_predictions(PredictionSource& source, const Trace& trace) {
    std::vector<double> out(static_cast<std::size_t>(trace.size()));
    for (std::int64_t i = 0; i < trace.size(); ++i)
        out[static_cast<std::size_t>(i)] = source.predict(trace.at(i), i + 1);
    return out;
}

namespace {

// Longest strictly increasing subsequence length, O(n log n).
std::int64_t lis_length(const std::vector<std::int64_t>& seq) {
    std::vector<std::int64_t> tails;
    for (std::int64_t v : seq) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return static_cast<std::int64_t>(tails.size());
}

} // namespace

LossReport losses(const Trace& trace, const NextArrivals& truth,
                  std::span<const double> predictions) {
    const std::int64_t n = trace.size();
    if (static_cast<std::int64_t>(predictions.size()) != n || truth.size() != n)
        throw std::invalid_argument("losses: prediction/label length mismatch");

    LossReport report;
    report.n = n;
    for (std::int64_t i = 0; i < n; ++i) {
        const double y = static_cast<double>(truth[i]);
        const double h = predictions[static_cast<std::size_t>(i)];
        const double diff = y - h;
        report.eta_1 += std::abs(diff);
        report.eta_2 += diff * diff;
        if (std::llround(h) != truth[i]) ++report.eta_c;
    }

    // Reorder loss: rank requests by true order, then measure how far the
    // predicted order is from sorted via the LIS of the rank sequence.
    std::vector<std::int64_t> order_true(static_cast<std::size_t>(n));
    std::vector<std::int64_t> order_pred(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        order_true[static_cast<std::size_t>(i)] = order_pred[static_cast<std::size_t>(i)] = i;

    auto true_key_less = [&](std::int64_t lhs, std::int64_t rhs) {
        if (truth[lhs] != truth[rhs]) return truth[lhs] < truth[rhs];
        return trace.at(lhs) < trace.at(rhs);
    };
    auto pred_key_less = [&](std::int64_t lhs, std::int64_t rhs) {
        const double hl = predictions[static_cast<std::size_t>(lhs)];
        const double hr = predictions[static_cast<std::size_t>(rhs)];
        if (hl != hr) return hl < hr;
        if (trace.at(lhs) != trace.at(rhs)) return trace.at(lhs) < trace.at(rhs);
        return truth[lhs] < truth[rhs];
    };
    std::sort(order_true.begin(), order_true.end(), true_key_less);
    std::sort(order_pred.begin(), order_pred.end(), pred_key_less);

    std::vector<std::int64_t> rank(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r)
        rank[static_cast<std::size_t>(order_true[static_cast<std::size_t>(r)])] = r;
    std::vector<std::int64_t> seq(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j)
        seq[static_cast<std::size_t>(j)] = rank[static_cast<std::size_t>(order_pred[static_cast<std::size_t>(j)])];
    report.eta_ed = 2 * (n - lis_length(seq));
    return report;
}

} // namespace cachelab
