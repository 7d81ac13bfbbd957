#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nid {

// Unrooted ternary tree: n labeled leaves of degree 1 and n-2 internal
// nodes of degree exactly 3 (2n-3 edges). Leaves occupy node ids
// [0, n), internal nodes [n, 2n-2).
class UnrootedTernaryTree {
public:
    UnrootedTernaryTree() = default; // empty placeholder, not a valid tree

    // Star on the first three labels, remaining leaves inserted by
    // subdividing a uniformly random edge. Requires >= 4 distinct labels.
    static UnrootedTernaryTree random_tree(std::vector<std::string> labels, std::mt19937_64& rng);

    // Deterministic caterpillar in label order; handy starting shape.
    static UnrootedTernaryTree caterpillar(std::vector<std::string> labels);

    static UnrootedTernaryTree parse_newick(const std::string& text);

    // Visits every distinct topology on the given labels exactly once
    // ((2n-5)!! of them) by recursive leaf insertion.
    static void enumerate_all(std::vector<std::string> labels,
                              const std::function<void(const UnrootedTernaryTree&)>& visit);

    std::size_t leaf_count() const { return labels_.size(); }
    std::size_t node_count() const { return adj_.size(); }
    const std::vector<std::string>& leaf_labels() const { return labels_; }
    const std::vector<int>& neighbors(int node) const { return adj_[static_cast<std::size_t>(node)]; }

    // Degree/count/connectivity invariants; cheap enough to assert after
    // every mutation in tests.
    bool is_valid() const;

    // Hop counts between all leaf pairs, indexed by leaf id.
    Eigen::MatrixXi leaf_distances() const;

    // All undirected edges as (u, v) with u < v, in deterministic order.
    std::vector<std::pair<int, int>> edges() const;

    // Mutation kernels. Each keeps the ternary invariants; samplers draw
    // from rng in a fixed order so runs are reproducible.
    void swap_leaf_labels(int leaf_a, int leaf_b);
    bool apply_random_mutation(std::mt19937_64& rng); // false: no valid move drawn

    // Canonical Newick: rooted at the internal node adjacent to the
    // lexicographically smallest leaf, children ordered by smallest
    // contained leaf label, no branch lengths. Equal trees serialize
    // identically.
    std::string to_newick() const;
    std::string to_dot() const;

private:
    int add_node();
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    void insert_leaf_on_edge(int leaf, std::pair<int, int> edge);
    std::vector<bool> component(int start, std::pair<int, int> blocked_edge) const;

    bool try_leaf_swap(std::mt19937_64& rng);
    bool try_subtree_swap(std::mt19937_64& rng);
    bool try_subtree_transfer(std::mt19937_64& rng);

    std::vector<std::string> labels_;      // leaf id -> label
    std::vector<std::vector<int>> adj_;
};

} // namespace nid
