#pragma once

#include "nid/distance_matrix.hpp"
#include "nid/tree.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nid {

// One of the three pairings of four leaves. `leaves` is sorted; pairing 0
// means leaves[0]leaves[1]|leaves[2]leaves[3], 1 means 02|13, 2 means 03|12.
struct QuartetTopology {
    std::array<std::string, 4> leaves;
    int pairing = 0;

    double cost(const DistanceMatrix& d) const;
    bool operator==(const QuartetTopology&) const = default;
};

// The unique pairing ab|cd whose tree paths a-b and c-d are vertex
// disjoint in t.
QuartetTopology embedded_topology(const UnrootedTernaryTree& t,
                                  const std::array<std::string, 4>& quartet);

// Normalized quartet benefit S(T) = (M - C_T)/(M - m) where C_T sums the
// costs of the embedded pairings and m/M sum the per-quartet minimal and
// maximal pairing costs. Degenerate M = m scores 1.
class QuartetScorer {
public:
    explicit QuartetScorer(const DistanceMatrix& d); // requires finite entries, n >= 4
    double score(const UnrootedTernaryTree& t) const;

    const DistanceMatrix& matrix() const { return matrix_; }

private:
    DistanceMatrix matrix_;
    double min_sum_ = 0.0;
    double max_sum_ = 0.0;
};

double tree_score(const UnrootedTernaryTree& t, const DistanceMatrix& d);

struct SearchResult {
    UnrootedTernaryTree tree;
    double score = 0.0;
    std::uint64_t steps_used = 0;
};

// Enumerates all (2n-5)!! unrooted ternary trees, 4 <= n <= 7. Ties break
// toward the smallest canonical Newick string.
SearchResult exhaustive_best(const DistanceMatrix& d);

// Randomized hill climbing: each restart starts from a random tree,
// applies uniformly chosen mutations, accepts only strict improvements
// and stops after `budget` consecutive rejections. Restart r draws from
// seed + r, so results are reproducible and restart-parallelizable.
// `trace`, when given, receives the best-so-far score after every
// accepted step of every restart.
SearchResult hill_climb(const DistanceMatrix& d, std::uint64_t seed, std::uint64_t budget,
                        std::uint32_t restarts, std::vector<double>* trace = nullptr);

} // namespace nid
