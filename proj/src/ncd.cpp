#include "nid/ncd.hpp"
#include "nid/errors.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace nid {

double ncd(const DataObject& x, const DataObject& y, const Compressor& c) {
    if (x.bytes.empty() && y.bytes.empty()) return 0.0;
    const auto zx = compress_len(c, x.bytes);
    const auto zy = compress_len(c, y.bytes);
    const auto zxy = compress_len_joint(c, x.bytes, y.bytes);
    const auto lo = std::min(zx, zy);
    const auto hi = std::max(zx, zy);
    if (hi == 0) return 0.0;
    return (static_cast<double>(zxy) - static_cast<double>(lo)) / static_cast<double>(hi);
}

DistanceMatrix ncd_matrix(const std::vector<DataObject>& corpus, const Compressor& c) {
    if (corpus.size() < 2) throw ValidationError("ncd_matrix: need at least 2 objects");
    std::unordered_set<std::string> seen;
    for (const auto& obj : corpus)
        if (!seen.insert(obj.label).second)
            throw ValidationError("ncd_matrix: duplicate label '" + obj.label + "'");

    const std::size_t n = corpus.size();
    DistanceMatrix m;
    m.labels.reserve(n);
    for (const auto& obj : corpus) m.labels.push_back(obj.label);
    m.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

    // Unique (i <= j) cells, each written once; work-stealing over a shared
    // counter so any thread count gives the same matrix.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    cells.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) return;
            const auto [i, j] = cells[k];
            try {
                const double d = ncd(corpus[i], corpus[j], c);
                m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
                m.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = d;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_threads = std::min<std::size_t>(hw, cells.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return m;
}

} // namespace nid
