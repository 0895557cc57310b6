#include "cachelab/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cachelab/policies.hpp"

namespace cachelab {

namespace {

// Raw keys -> dense ids in first-appearance order.
Trace densify(const std::vector<std::string>& keys) {
    std::unordered_map<std::string, ElementId> map;
    map.reserve(keys.size());
    std::vector<ElementId> reqs;
    reqs.reserve(keys.size());
    for (const auto& key : keys) {
        auto [it, inserted] = map.emplace(key, static_cast<ElementId>(map.size()));
        reqs.push_back(it->second);
    }
    return Trace(std::move(reqs), static_cast<std::int64_t>(map.size()));
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<IngestedTrace> ingest_brightkite(const std::string& path,
                                             const BrightkiteFilters& filters,
                                             IngestStats* stats) {
    if (filters.k < 1 || filters.top_n < 1 || filters.min_opt < 0)
        throw std::invalid_argument("ingest_brightkite: filters must be positive");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest_brightkite: cannot open " + path);

    struct Checkin {
        std::string timestamp;
        std::string location;
    };
    std::unordered_map<std::string, std::vector<Checkin>> per_user;
    IngestStats local;
    std::string line;
    while (std::getline(in, line)) {
        ++local.lines_read;
        std::istringstream row(line);
        std::string user, ts, lat, lon, loc;
        if (!(std::getline(row, user, '\t') && std::getline(row, ts, '\t') &&
              std::getline(row, lat, '\t') && std::getline(row, lon, '\t') &&
              std::getline(row, loc, '\t'))) {
            ++local.lines_skipped;
            continue;
        }
        loc = trim(loc);
        user = trim(user);
        ts = trim(ts);
        if (user.empty() || ts.empty() || loc.empty()) {
            ++local.lines_skipped;
            continue;
        }
        per_user[user].push_back(Checkin{ts, loc});
    }

    std::vector<IngestedTrace> kept;
    for (auto& [user, checkins] : per_user) {
        ++local.candidates;
        // ISO-8601 timestamps sort lexicographically; stable keeps file
        // order on ties
        std::stable_sort(checkins.begin(), checkins.end(),
                         [](const Checkin& a, const Checkin& b) { return a.timestamp < b.timestamp; });
        std::vector<std::string> keys;
        keys.reserve(checkins.size());
        for (const auto& c : checkins) keys.push_back(c.location);
        Trace trace = densify(keys);
        if (trace.size() == 0) continue;
        const std::int64_t opt = belady(trace, filters.k).misses;
        if (opt < filters.min_opt) continue;
        kept.push_back(IngestedTrace{user, std::move(trace), opt});
    }

    std::stable_sort(kept.begin(), kept.end(), [](const IngestedTrace& a, const IngestedTrace& b) {
        if (a.trace.size() != b.trace.size()) return a.trace.size() > b.trace.size();
        return a.id < b.id;
    });
    if (static_cast<std::int64_t>(kept.size()) > filters.top_n)
        kept.resize(static_cast<std::size_t>(filters.top_n));

    if (local.lines_skipped > 0)
        std::cerr << "ingest_brightkite: skipped " << local.lines_skipped << " malformed lines\n";
    if (kept.empty()) throw std::runtime_error("ingest_brightkite: no sequence passed the filters");
    if (stats) *stats = local;
    return kept;
}

std::vector<IngestedTrace> ingest_citibike(const std::string& dir, std::int64_t max_events,
                                           int k, IngestStats* stats) {
    if (max_events < 1) throw std::invalid_argument("ingest_citibike: max_events must be positive");
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw std::runtime_error("ingest_citibike: not a directory: " + dir);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    IngestStats local;
    std::vector<IngestedTrace> out;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "ingest_citibike: cannot open " << file << ", skipping\n";
            ++local.files_skipped;
            continue;
        }
        std::string header;
        if (!std::getline(in, header)) {
            std::cerr << "ingest_citibike: empty file " << file << ", skipping\n";
            ++local.files_skipped;
            continue;
        }
        const auto cols = split_csv_row(header);
        std::int64_t station_col = -1, time_col = -1;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::string name = trim(cols[i]);
            std::transform(name.begin(), name.end(), name.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (name == "start station id") station_col = static_cast<std::int64_t>(i);
            if (name == "starttime" || name == "start time") time_col = static_cast<std::int64_t>(i);
        }
        if (station_col < 0) {
            std::cerr << "ingest_citibike: no 'start station id' column in " << file
                      << ", skipping\n";
            ++local.files_skipped;
            continue;
        }
        ++local.files_read;
        ++local.candidates;

        struct Row {
            std::string time;
            std::string station;
        };
        std::vector<Row> rows;
        std::string line;
        while (static_cast<std::int64_t>(rows.size()) < max_events && std::getline(in, line)) {
            ++local.lines_read;
            if (line.empty()) continue;
            const auto fields = split_csv_row(line);
            if (static_cast<std::int64_t>(fields.size()) <= station_col) {
                ++local.lines_skipped;
                continue;
            }
            std::string station = trim(fields[static_cast<std::size_t>(station_col)]);
            if (station.empty()) {
                ++local.lines_skipped;
                continue;
            }
            std::string time = time_col >= 0 && time_col < static_cast<std::int64_t>(fields.size())
                                   ? trim(fields[static_cast<std::size_t>(time_col)])
                                   : "";
            rows.push_back(Row{std::move(time), std::move(station)});
        }
        // files arrive start-time sorted already; re-sort defensively
        std::stable_sort(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.time < b.time; });
        std::vector<std::string> keys;
        keys.reserve(rows.size());
        for (auto& r : rows) keys.push_back(std::move(r.station));
        if (keys.empty()) {
            ++local.files_skipped;
            continue;
        }
        Trace trace = densify(keys);
        const std::int64_t opt = belady(trace, k).misses;
        out.push_back(IngestedTrace{file.stem().string(), std::move(trace), opt});
    }
    if (out.empty()) throw std::runtime_error("ingest_citibike: no usable files in " + dir);
    if (stats) *stats = local;
    return out;
}

void write_manifest(std::ostream& out, const std::vector<IngestedTrace>& traces) {
    out << "trace,length,universe,opt_misses\n";
    for (const auto& t : traces)
        out << t.id << "," << t.trace.size() << "," << t.trace.universe() << ","
            << t.opt_misses << "\n";
}

} // namespace cachelab
