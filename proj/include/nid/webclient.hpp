#pragma once

#include <cstdint>
#include <string>

namespace nid {

// Endpoint-agnostic hit-count client. The URL template carries a {query}
// placeholder; count_path is a dot-separated path into the JSON response
// (array indices allowed, e.g. "results.0.count").
struct LiveEndpointConfig {
    std::string url_template;
    std::string count_path;
    std::string cache_dir;
    int timeout_seconds = 10;
};

// Fetches (or replays from the on-disk cache) the hit count for a query
// string. Cache hits never touch the network. Network or extraction
// failures throw ExternalToolError carrying the query; a missing count
// path is an error, never a zero count.
std::uint64_t live_hit_count(const std::string& query, const LiveEndpointConfig& config);

} // namespace nid
