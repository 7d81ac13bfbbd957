#include "nid/multilist.hpp"
#include "nid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nid {

StringList StringList::canonical_order(std::vector<std::string> items) {
    if (items.size() < 2) throw ValidationError("string list needs at least 2 items");
    std::stable_sort(items.begin(), items.end(), [](const std::string& a, const std::string& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    StringList out;
    out.items_ = std::move(items);
    return out;
}

std::size_t StringList::joint_compressed_size(const Compressor& c) const {
    std::string all;
    std::size_t total = 0;
    for (const auto& s : items_) total += s.size();
    all.reserve(total);
    for (const auto& s : items_) all += s;
    return c.compressed_size(all);
}

double e_max_est(const StringList& x, const Compressor& c) {
    const double zx = static_cast<double>(x.joint_compressed_size(c));
    std::size_t zmin = std::numeric_limits<std::size_t>::max();
    for (const auto& s : x.items()) zmin = std::min(zmin, c.compressed_size(s));
    return zx - static_cast<double>(zmin);
}

double e_min_est(const StringList& x, const Compressor& c) {
    const double zx = static_cast<double>(x.joint_compressed_size(c));
    std::size_t zmax = 0;
    for (const auto& s : x.items()) zmax = std::max(zmax, c.compressed_size(s));
    return zx - static_cast<double>(zmax);
}

double pairwise_bound(const StringList& x, const Compressor& c) {
    const auto& items = x.items();
    const std::size_t m = items.size();

    // Pair e_max values, reused across the min-over-i scan.
    std::vector<double> pair_emax(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = i + 1; k < m; ++k) {
            const auto pair = StringList::canonical_order({items[i], items[k]});
            const double v = e_max_est(pair, c);
            pair_emax[i * m + k] = v;
            pair_emax[k * m + i] = v;
        }

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            if (k != i) sum += pair_emax[i * m + k];
        best = std::min(best, sum);
    }
    return best;
}

double default_sandwich_slack(const StringList& x) {
    std::size_t total = 0;
    for (const auto& s : x.items()) total += s.size();
    return 2.0 * std::log2(static_cast<double>(std::max<std::size_t>(total, 1))) + 64.0;
}

MultiDistanceReport check_sandwich(const StringList& x, const Compressor& c, double slack) {
    if (slack < 0.0) slack = default_sandwich_slack(x);
    MultiDistanceReport rep;
    rep.slack_used = slack;
    rep.e_min_est = e_min_est(x, c);
    rep.e_max_est = e_max_est(x, c);
    rep.pairwise_bound = pairwise_bound(x, c);
    rep.sandwich_ok = rep.e_min_est <= rep.e_max_est + slack &&
                      rep.e_max_est <= rep.pairwise_bound + slack;
    return rep;
}

} // namespace nid
