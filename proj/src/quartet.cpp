#include "nid/quartet.hpp"
#include "nid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace nid {

namespace {

std::unordered_map<std::string, int> label_index(const std::vector<std::string>& labels) {
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
    return idx;
}

// Three pairing costs of quartet (i,j,k,l) under d:
// 0 -> ij|kl, 1 -> ik|jl, 2 -> il|jk.
template <typename Mat>
std::array<double, 3> pairing_costs(const Mat& d, int i, int j, int k, int l) {
    return {static_cast<double>(d(i, j)) + static_cast<double>(d(k, l)),
            static_cast<double>(d(i, k)) + static_cast<double>(d(j, l)),
            static_cast<double>(d(i, l)) + static_cast<double>(d(j, k))};
}

int argmin3(const std::array<double, 3>& c) {
    int best = 0;
    if (c[1] < c[best]) best = 1;
    if (c[2] < c[best]) best = 2;
    return best;
}

} // namespace

double QuartetTopology::cost(const DistanceMatrix& d) const {
    const auto idx = label_index(d.labels);
    std::array<int, 4> id{};
    for (int i = 0; i < 4; ++i) {
        const auto it = idx.find(leaves[static_cast<std::size_t>(i)]);
        if (it == idx.end())
            throw ValidationError("unknown label in quartet: '" + leaves[static_cast<std::size_t>(i)] + "'");
        id[static_cast<std::size_t>(i)] = it->second;
    }
    return pairing_costs(d.values, id[0], id[1], id[2], id[3])[static_cast<std::size_t>(pairing)];
}

QuartetTopology embedded_topology(const UnrootedTernaryTree& t,
                                  const std::array<std::string, 4>& quartet) {
    const auto idx = label_index(t.leaf_labels());
    QuartetTopology out;
    out.leaves = quartet;
    std::sort(out.leaves.begin(), out.leaves.end());
    std::array<int, 4> leaf{};
    for (int i = 0; i < 4; ++i) {
        const auto it = idx.find(out.leaves[static_cast<std::size_t>(i)]);
        if (it == idx.end())
            throw ValidationError("leaf not in tree: '" + out.leaves[static_cast<std::size_t>(i)] + "'");
        leaf[static_cast<std::size_t>(i)] = it->second;
    }
    // With unit edge lengths the embedded pairing is the unique one whose
    // within-pair path lengths sum strictly below the other two (four-point
    // condition); this is equivalent to vertex-disjointness of the paths.
    const auto dt = t.leaf_distances();
    out.pairing = argmin3(pairing_costs(dt, leaf[0], leaf[1], leaf[2], leaf[3]));
    return out;
}

QuartetScorer::QuartetScorer(const DistanceMatrix& d) : matrix_(d) {
    matrix_.validate();
    const auto n = static_cast<int>(matrix_.size());
    if (n < 4) throw ValidationError("quartet scoring needs n >= 4");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(matrix_.values(i, j)))
                throw ValidationError("quartet scoring needs a finite matrix; entry (" +
                                      matrix_.labels[static_cast<std::size_t>(i)] + ", " +
                                      matrix_.labels[static_cast<std::size_t>(j)] + ") is not");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    const auto c = pairing_costs(matrix_.values, i, j, k, l);
                    min_sum_ += *std::min_element(c.begin(), c.end());
                    max_sum_ += *std::max_element(c.begin(), c.end());
                }
}

double QuartetScorer::score(const UnrootedTernaryTree& t) const {
    const auto n = static_cast<int>(matrix_.size());
    if (t.leaf_count() != matrix_.size())
        throw ValidationError("tree and matrix disagree on leaf count");
    const auto tree_idx = label_index(t.leaf_labels());
    std::vector<int> leaf_of(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto it = tree_idx.find(matrix_.labels[static_cast<std::size_t>(i)]);
        if (it == tree_idx.end())
            throw ValidationError("tree lacks label '" + matrix_.labels[static_cast<std::size_t>(i)] + "'");
        leaf_of[static_cast<std::size_t>(i)] = it->second;
    }

    const auto dt = t.leaf_distances();
    double tree_cost = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    const auto hop = pairing_costs(dt, leaf_of[static_cast<std::size_t>(i)],
                                                   leaf_of[static_cast<std::size_t>(j)],
                                                   leaf_of[static_cast<std::size_t>(k)],
                                                   leaf_of[static_cast<std::size_t>(l)]);
                    const auto c = pairing_costs(matrix_.values, i, j, k, l);
                    tree_cost += c[static_cast<std::size_t>(argmin3(hop))];
                }
    if (max_sum_ == min_sum_) return 1.0;
    return (max_sum_ - tree_cost) / (max_sum_ - min_sum_);
}

double tree_score(const UnrootedTernaryTree& t, const DistanceMatrix& d) {
    return QuartetScorer(d).score(t);
}

SearchResult exhaustive_best(const DistanceMatrix& d) {
    d.validate();
    const std::size_t n = d.size();
    if (n < 4 || n > 7)
        throw ValidationError("exhaustive_best supports 4 <= n <= 7, got n=" + std::to_string(n));
    QuartetScorer scorer(d);

    SearchResult best;
    best.score = -1.0;
    std::string best_newick;
    UnrootedTernaryTree::enumerate_all(d.labels, [&](const UnrootedTernaryTree& t) {
        ++best.steps_used;
        const double s = scorer.score(t);
        if (s < best.score) return;
        const std::string nwk = t.to_newick();
        if (s > best.score || best_newick.empty() || nwk < best_newick) {
            best.score = s;
            best.tree = t;
            best_newick = nwk;
        }
    });
    return best;
}

SearchResult hill_climb(const DistanceMatrix& d, std::uint64_t seed, std::uint64_t budget,
                        std::uint32_t restarts, std::vector<double>* trace) {
    d.validate();
    if (d.size() < 4) throw ValidationError("hill_climb needs n >= 4");
    if (restarts == 0) throw ValidationError("hill_climb needs at least one restart");
    QuartetScorer scorer(d);

    SearchResult best;
    best.score = -1.0;
    std::string best_newick;

    for (std::uint32_t r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + r);
        UnrootedTernaryTree cur = UnrootedTernaryTree::random_tree(d.labels, rng);
        double cur_score = scorer.score(cur);
        double run_best = cur_score;
        if (trace) trace->push_back(run_best);

        std::uint64_t rejected = 0;
        while (rejected < budget) {
            UnrootedTernaryTree cand = cur;
            const bool moved = cand.apply_random_mutation(rng);
            ++best.steps_used;
            double cand_score = cur_score;
            if (moved) cand_score = scorer.score(cand);
            if (moved && cand_score > cur_score) {
                cur = std::move(cand);
                cur_score = cand_score;
                rejected = 0;
                run_best = std::max(run_best, cur_score);
                if (trace) trace->push_back(run_best);
            } else {
                ++rejected;
            }
        }

        const std::string nwk = cur.to_newick();
        if (cur_score > best.score ||
            (cur_score == best.score && (best_newick.empty() || nwk < best_newick))) {
            best.score = cur_score;
            best.tree = cur;
            best_newick = nwk;
        }
    }
    return best;
}

} // namespace nid
