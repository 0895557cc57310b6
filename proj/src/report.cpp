#include "cachelab/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cachelab/ingest.hpp"

namespace cachelab {

namespace {

constexpr const char* kSchema =
    "kind,trace,policy,predictor,sigma,gamma,threshold,seed,k,n,universe,misses,opt,"
    "ratio,eta_c,eta_1,eta_2,eta_ed,bound_t2,bound_t4,bound_t5,clean,count,se_ratio";

struct GroupStats {
    std::int64_t count = 0;
    double sum_misses = 0.0;
    double sum_opt = 0.0;
    double sum_ratio = 0.0;
    double sum_ratio_sq = 0.0;
    double sum_eta1 = 0.0;

    double ratio(AggMode mode) const {
        return mode == AggMode::MeanOfRatios ? sum_ratio / static_cast<double>(count)
                                             : sum_misses / sum_opt;
    }
    double se_ratio() const {
        if (count < 2) return 0.0;
        const double n = static_cast<double>(count);
        const double mean = sum_ratio / n;
        const double var = (sum_ratio_sq - n * mean * mean) / (n - 1.0);
        return std::sqrt(std::max(var, 0.0) / n);
    }
};

std::string group_key(const std::string& policy, const std::string& predictor,
                      const std::string& sigma, const std::string& gamma,
                      const std::string& threshold, const std::string& k) {
    return policy + "," + predictor + "," + sigma + "," + gamma + "," + threshold + "," + k;
}

const char* agg_name(AggMode mode) {
    return mode == AggMode::MeanOfRatios ? "mean_of_ratios" : "ratio_of_sums";
}

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_report(std::ostream& out, std::span<const RunRecord> records,
                  const ReportOptions& options) {
    out << "# cachelab-report v1 agg=" << agg_name(options.agg) << "\n";
    out << kSchema << "\n";

    struct GroupId {
        std::string policy, predictor, sigma, gamma, threshold, k;
    };
    std::vector<std::string> group_order;
    std::map<std::string, std::pair<GroupId, GroupStats>> groups;

    for (const auto& r : records) {
        const std::string sigma = r.predictor == PredictorKind::Lognormal
                                      ? format_double(r.sigma)
                                      : std::string();
        const std::string gamma =
            r.policy == PolicyKind::PredictiveMarker && !r.threshold_k
                ? format_double(r.gamma)
                : std::string();
        const std::string threshold =
            r.policy == PolicyKind::PredictiveMarker && r.threshold_k ? "k" : std::string();
        out << "run," << r.trace_id << ',' << to_string(r.policy) << ','
            << to_string(r.predictor) << ',' << sigma << ',' << gamma << ',' << threshold
            << ',' << r.seed_idx << ',' << r.k << ',' << r.n << ',' << r.universe << ','
            << r.misses << ',' << r.opt << ',' << format_double(r.ratio) << ',';
        if (r.predictor != PredictorKind::None)
            out << r.loss.eta_c << ',' << format_double(r.loss.eta_1) << ','
                << format_double(r.loss.eta_2) << ',' << r.loss.eta_ed << ',';
        else
            out << ",,,,";
        if (r.has_bounds)
            out << format_double(r.bound_t2) << ',' << format_double(r.bound_t4) << ','
                << format_double(r.bound_t5) << ',';
        else
            out << ",,,";
        out << r.clean_total << ",,\n";

        const GroupId id{to_string(r.policy), to_string(r.predictor), sigma, gamma, threshold,
                         std::to_string(r.k)};
        const std::string key = group_key(id.policy, id.predictor, id.sigma, id.gamma,
                                          id.threshold, id.k);
        auto [it, inserted] = groups.try_emplace(key, id, GroupStats{});
        if (inserted) group_order.push_back(key);
        auto& g = it->second.second;
        ++g.count;
        g.sum_misses += static_cast<double>(r.misses);
        g.sum_opt += static_cast<double>(r.opt);
        g.sum_ratio += r.ratio;
        g.sum_ratio_sq += r.ratio * r.ratio;
        g.sum_eta1 += r.loss.eta_1;
    }

    for (const auto& key : group_order) {
        const auto& [id, g] = groups.at(key);
        out << "agg,*," << id.policy << ',' << id.predictor << ',' << id.sigma << ','
            << id.gamma << ',' << id.threshold << ",," << id.k << ",,,"
            << format_double(g.sum_misses / static_cast<double>(g.count)) << ','
            << format_double(g.sum_opt / static_cast<double>(g.count)) << ','
            << format_double(g.ratio(options.agg)) << ",,"
            << format_double(g.sum_eta1 / static_cast<double>(g.count)) << ",,,,,,,"
            << g.count << ',' << format_double(g.se_ratio()) << "\n";
    }
}

VerifyOutcome verify_report(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# cachelab-report v1", 0) != 0)
        return {false, "missing or unknown schema header"};
    const auto agg_pos = line.find("agg=");
    if (agg_pos == std::string::npos) return {false, "missing agg mode"};
    const std::string agg_mode_name = line.substr(agg_pos + 4);
    AggMode mode;
    if (agg_mode_name == "mean_of_ratios")
        mode = AggMode::MeanOfRatios;
    else if (agg_mode_name == "ratio_of_sums")
        mode = AggMode::RatioOfSums;
    else
        return {false, "unknown agg mode: " + agg_mode_name};
    if (!std::getline(in, line) || line != kSchema) return {false, "unexpected column header"};

    std::map<std::string, GroupStats> groups;
    std::int64_t agg_rows = 0, run_rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_row(line);
        if (f.size() != 24) return {false, "bad column count: " + line};
        if (f[0] == "run") {
            ++run_rows;
            auto& g = groups[group_key(f[2], f[3], f[4], f[5], f[6], f[8])];
            ++g.count;
            g.sum_misses += std::stod(f[11]);
            g.sum_opt += std::stod(f[12]);
            const double ratio = std::stod(f[13]);
            g.sum_ratio += ratio;
            g.sum_ratio_sq += ratio * ratio;
            g.sum_eta1 += f[15].empty() ? 0.0 : std::stod(f[15]);
        } else if (f[0] == "agg") {
            ++agg_rows;
            const std::string key = group_key(f[2], f[3], f[4], f[5], f[6], f[8]);
            const auto it = groups.find(key);
            if (it == groups.end()) return {false, "agg row without runs: " + key};
            const auto& g = it->second;
            std::ostringstream expect;
            expect << format_double(g.sum_misses / static_cast<double>(g.count)) << ','
                   << format_double(g.sum_opt / static_cast<double>(g.count)) << ','
                   << format_double(g.ratio(mode));
            const std::string got = f[11] + "," + f[12] + "," + f[13];
            if (got != expect.str())
                return {false, "agg mismatch for " + key + ": got " + got + " want " +
                                   expect.str()};
            if (f[22] != std::to_string(g.count))
                return {false, "agg count mismatch for " + key};
            if (f[23] != format_double(g.se_ratio()))
                return {false, "agg se mismatch for " + key};
        } else {
            return {false, "unknown row kind: " + f[0]};
        }
    }
    if (run_rows == 0) return {false, "no run rows"};
    if (agg_rows == 0) return {false, "no agg rows"};
    return {true, "ok: " + std::to_string(run_rows) + " runs, " + std::to_string(agg_rows) +
                      " aggregates"};
}

} // namespace cachelab
