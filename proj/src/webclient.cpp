#include "nid/webclient.hpp"
#include "nid/errors.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace nid {

namespace {

std::string cache_file_for(const std::string& cache_dir, const std::string& query) {
    // Filename-safe cache key; collisions broken by appending the length.
    const auto h = std::hash<std::string>{}(query);
    std::ostringstream name;
    name << std::hex << h << "-" << query.size() << ".count";
    return (std::filesystem::path(cache_dir) / name.str()).string();
}

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

// Split "host part" and path from a http(s)://host[:port]/... template
// after substituting the query.
std::uint64_t extract_count(const nlohmann::json& body, const std::string& path,
                            const std::string& query) {
    const nlohmann::json* cur = &body;
    std::istringstream parts(path);
    std::string part;
    while (std::getline(parts, part, '.')) {
        if (cur->is_array()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(part);
            } catch (const std::exception&) {
                throw ExternalToolError("count path '" + path + "' invalid for query: " + query);
            }
            if (idx >= cur->size())
                throw ExternalToolError("count path '" + path + "' missing for query: " + query);
            cur = &(*cur)[idx];
        } else if (cur->is_object() && cur->contains(part)) {
            cur = &(*cur)[part];
        } else {
            throw ExternalToolError("count path '" + path + "' missing for query: " + query);
        }
    }
    if (cur->is_number_unsigned() || cur->is_number_integer())
        return cur->get<std::uint64_t>();
    if (cur->is_string()) {
        try {
            return std::stoull(cur->get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ExternalToolError("count path '" + path + "' not numeric for query: " + query);
}

} // namespace

std::uint64_t live_hit_count(const std::string& query, const LiveEndpointConfig& config) {
    const auto cache_file = cache_file_for(config.cache_dir, query);
    {
        std::ifstream f(cache_file);
        if (f) {
            std::uint64_t v = 0;
            if (f >> v) return v;
        }
    }

    std::string url = config.url_template;
    const auto pos = url.find("{query}");
    if (pos == std::string::npos)
        throw ExternalToolError("endpoint URL template lacks {query}: " + config.url_template);
    url.replace(pos, 7, url_encode(query));

    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ExternalToolError("endpoint URL has no scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string host = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(host);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);

    auto res = client.Get(path);
    if (!res || res->status != 200)
        throw ExternalToolError("hit-count request failed for query: " + query);

    nlohmann::json body;
    try {
        body = nlohmann::json::parse(res->body);
    } catch (const std::exception&) {
        throw ExternalToolError("unparsable hit-count response for query: " + query);
    }
    const auto count = extract_count(body, config.count_path, query);

    std::filesystem::create_directories(config.cache_dir);
    std::ofstream out(cache_file, std::ios::trunc);
    out << count << "\n";
    return count;
}

} // namespace nid
