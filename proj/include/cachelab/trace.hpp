#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cachelab {

using ElementId = std::int64_t; // dense ids in [0, universe)
using Position = std::int64_t;  // 1-indexed request positions

// Immutable request sequence over a dense element universe.
class Trace {
public:
    Trace() = default;
    // universe < 0 means "derive as max id + 1".
    explicit Trace(std::vector<ElementId> requests, std::int64_t universe = -1);

    const std::vector<ElementId>& requests() const { return requests_; }
    ElementId at(std::int64_t idx) const { return requests_[idx]; }
    std::int64_t size() const { return static_cast<std::int64_t>(requests_.size()); }
    std::int64_t universe() const { return universe_; }
    std::int64_t distinct() const; // number of ids actually present

private:
    std::vector<ElementId> requests_;
    std::int64_t universe_ = 0;
};

// labels[i] = position of the next request of requests[i] after i+1
// (1-indexed), or n+1 when the element never reappears.
struct NextArrivals {
    std::vector<Position> labels;

    std::int64_t size() const { return static_cast<std::int64_t>(labels.size()); }
    Position operator[](std::int64_t idx) const { return labels[idx]; }
};

// Single backward pass.
NextArrivals compute_next_arrivals(const Trace& trace);

// What a history-based predictor is allowed to see when asked about a
// request: the element, the current position and the element's past
// arrival positions up to and including the current one.
struct FeatureView {
    ElementId element = -1;
    Position position = 0;
    std::span<const Position> history; // strictly increasing, <= position
};

// Plain-text trace format: one element id per line, '#' starts a comment.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const Trace& trace,
                 const std::string& header_comment = "");
void write_trace_file(const std::string& path, const Trace& trace,
                      const std::string& header_comment = "");

} // namespace cachelab
