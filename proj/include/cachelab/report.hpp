#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "cachelab/analysis.hpp"
#include "cachelab/batch.hpp"

namespace cachelab {

// Long-format CSV: one "run" row per record plus one "agg" row per
// (policy, predictor, sigma, gamma, threshold, k) group, aggregated in
// row order so a verifier can rebuild them byte for byte. Doubles are
// printed shortest-round-trip, so parsing them back is exact.
struct ReportOptions {
    AggMode agg = AggMode::MeanOfRatios;
};

void write_report(std::ostream& out, std::span<const RunRecord> records,
                  const ReportOptions& options = {});

std::string format_double(double value);

struct VerifyOutcome {
    bool ok = false;
    std::string message;
};

// Re-derives every agg row from the run rows of the same file and
// compares. Understands exactly the schema written by write_report.
VerifyOutcome verify_report(std::istream& in);

} // namespace cachelab
