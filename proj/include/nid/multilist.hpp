#pragma once

#include "nid/compressor.hpp"

#include <string>
#include <vector>

namespace nid {

// Finite list of byte strings in canonical order: length-increasing,
// ties lexicographic. Duplicates are preserved (lists, not sets).
class StringList {
public:
    static StringList canonical_order(std::vector<std::string> items);

    const std::vector<std::string>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }

    // Z of the separator-free concatenation of the canonical list.
    std::size_t joint_compressed_size(const Compressor& c) const;

private:
    StringList() = default;
    std::vector<std::string> items_;
};

struct MultiDistanceReport {
    double e_min_est = 0.0;
    double e_max_est = 0.0;
    double pairwise_bound = 0.0;
    bool sandwich_ok = false;
    double slack_used = 0.0;
};

// Compression estimates of the list information distances, using
// K(X|x) ~ Z(X) - Z(x):
//   e_max_est = Z(X) - min_x Z(x)
//   e_min_est = Z(X) - max_x Z(x)
double e_max_est(const StringList& x, const Compressor& c);
double e_min_est(const StringList& x, const Compressor& c);

// Right side of the sandwich inequality: min over i of the sum of
// pairwise e_max estimates from item i to every other item.
double pairwise_bound(const StringList& x, const Compressor& c);

// Default slack operationalizing the "logarithmic additive term":
// 2*log2(total bytes of X) + 64.
double default_sandwich_slack(const StringList& x);

// Evaluates e_min <= e_max + slack and e_max <= pairwise_bound + slack.
// slack < 0 selects the default.
MultiDistanceReport check_sandwich(const StringList& x, const Compressor& c, double slack = -1.0);

} // namespace nid
