#include "cachelab/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cachelab {

Trace::Trace(std::vector<ElementId> requests, std::int64_t universe)
    : requests_(std::move(requests)) {
    ElementId max_id = -1;
    for (ElementId e : requests_) {
        if (e < 0) throw std::invalid_argument("trace: negative element id");
        max_id = std::max(max_id, e);
    }
    universe_ = universe < 0 ? max_id + 1 : universe;
    if (max_id >= universe_)
        throw std::invalid_argument("trace: element id outside declared universe");
}

std::int64_t Trace::distinct() const {
    std::vector<char> seen(static_cast<std::size_t>(universe_), 0);
    std::int64_t count = 0;
    for (ElementId e : requests_)
        if (!seen[static_cast<std::size_t>(e)]) {
            seen[static_cast<std::size_t>(e)] = 1;
            ++count;
        }
    return count;
}

NextArrivals compute_next_arrivals(const Trace& trace) {
    const std::int64_t n = trace.size();
    NextArrivals out;
    out.labels.assign(static_cast<std::size_t>(n), 0);
    std::vector<Position> next_pos(static_cast<std::size_t>(trace.universe()), n + 1);
    for (std::int64_t i = n - 1; i >= 0; --i) {
        const auto e = static_cast<std::size_t>(trace.at(i));
        out.labels[static_cast<std::size_t>(i)] = next_pos[e];
        next_pos[e] = i + 1;
    }
    return out;
}

Trace read_trace(std::istream& in) {
    std::vector<ElementId> requests;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t pos = 0;
        long long v = std::stoll(line, &pos);
        if (v < 0) throw std::runtime_error("trace file: negative element id");
        requests.push_back(v);
        (void)pos;
    }
    return Trace(std::move(requests));
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    return read_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace, const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    for (ElementId e : trace.requests()) out << e << "\n";
}

void write_trace_file(const std::string& path, const Trace& trace,
                      const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_trace(out, trace, header_comment);
}

} // namespace cachelab
