#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cachelab/trace.hpp"

namespace cachelab {

struct IngestedTrace {
    std::string id;          // user id or source file stem
    Trace trace;             // densely re-mapped element ids
    std::int64_t opt_misses = 0;
};

struct IngestStats {
    std::int64_t lines_read = 0;
    std::int64_t lines_skipped = 0;
    std::int64_t files_read = 0;
    std::int64_t files_skipped = 0;
    std::int64_t candidates = 0; // sequences seen before filtering
};

struct BrightkiteFilters {
    int k = 10;                  // cache size used for the optimum filter
    std::int64_t top_n = 100;    // keep the longest top_n after filtering
    std::int64_t min_opt = 50;   // require offline optimum >= this
};

// Tab-separated check-in log: user, timestamp, latitude, longitude,
// location id. Produces one trace per kept user: location ids in
// timestamp order, filtered to users whose offline-optimal miss count
// reaches min_opt, then the top_n longest of those. Malformed lines are
// skipped and counted.
std::vector<IngestedTrace> ingest_brightkite(const std::string& path,
                                             const BrightkiteFilters& filters = {},
                                             IngestStats* stats = nullptr);

// Directory of monthly trip CSVs with a "start station id" column; one
// trace per file (lexicographic file order), truncated to max_events
// events, rows kept in start-time order. Files without the column are
// skipped with a warning. opt_misses is computed with cache size k.
std::vector<IngestedTrace> ingest_citibike(const std::string& dir,
                                           std::int64_t max_events = 25000, int k = 100,
                                           IngestStats* stats = nullptr);

// manifest CSV: trace id, length, universe size, optimum misses.
void write_manifest(std::ostream& out, const std::vector<IngestedTrace>& traces);

// Minimal RFC-4180-ish split: handles quoted fields and embedded commas.
std::vector<std::string> split_csv_row(const std::string& line);

} // namespace cachelab
