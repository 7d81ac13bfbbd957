#include "nid/tree.hpp"
#include "nid/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace nid;

namespace {

std::vector<std::string> letters(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

} // namespace

TEST_CASE("random trees satisfy the degree and count invariants") {
    std::mt19937_64 rng(1);
    for (int n = 4; n <= 12; ++n) {
        const auto t = UnrootedTernaryTree::random_tree(letters(n), rng);
        REQUIRE(t.is_valid());
        REQUIRE(t.leaf_count() == static_cast<std::size_t>(n));
        REQUIRE(t.node_count() == static_cast<std::size_t>(2 * n - 2));
        REQUIRE(t.edges().size() == static_cast<std::size_t>(2 * n - 3));
    }
}

TEST_CASE("enumerate_all yields (2n-5)!! distinct topologies") {
    const std::size_t expected[] = {3, 15, 105, 945}; // n = 4..7
    for (int n = 4; n <= 7; ++n) {
        std::set<std::string> seen;
        std::size_t count = 0;
        UnrootedTernaryTree::enumerate_all(letters(n), [&](const UnrootedTernaryTree& t) {
            REQUIRE(t.is_valid());
            seen.insert(t.to_newick());
            ++count;
        });
        CHECK(count == expected[n - 4]);
        CHECK(seen.size() == expected[n - 4]); // canonical Newick separates topologies
    }
}

TEST_CASE("canonical newick of the ab|cd quartet tree") {
    // ab|cd is the first tree enumerated on labels a,b,c,d.
    std::vector<std::string> newicks;
    UnrootedTernaryTree::enumerate_all(letters(4),
                                       [&](const UnrootedTernaryTree& t) { newicks.push_back(t.to_newick()); });
    REQUIRE(newicks.size() == 3);
    CHECK(std::find(newicks.begin(), newicks.end(), "(a,b,(c,d));") != newicks.end());
}

TEST_CASE("serialize-parse-serialize is a fixpoint on random trees") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const int n = 4 + static_cast<int>(rng() % 9);
        const auto t = UnrootedTernaryTree::random_tree(letters(n), rng);
        const auto nwk = t.to_newick();
        const auto parsed = UnrootedTernaryTree::parse_newick(nwk);
        REQUIRE(parsed.is_valid());
        REQUIRE(parsed.to_newick() == nwk);
    }
}

TEST_CASE("isomorphic trees serialize identically regardless of build order") {
    // Same topology reached by different mutation histories.
    std::mt19937_64 rng(3);
    const auto t = UnrootedTernaryTree::random_tree(letters(8), rng);
    auto copy = UnrootedTernaryTree::parse_newick(t.to_newick());
    CHECK(copy.to_newick() == t.to_newick());

    // Swapping two leaves and swapping back restores the serialization.
    auto mutated = t;
    mutated.swap_leaf_labels(0, 5);
    CHECK(mutated.to_newick() != t.to_newick());
    mutated.swap_leaf_labels(0, 5);
    CHECK(mutated.to_newick() == t.to_newick());
}

TEST_CASE("every mutation kernel preserves validity") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 9);
        auto t = UnrootedTernaryTree::random_tree(letters(n), rng);
        for (int step = 0; step < 200; ++step) {
            t.apply_random_mutation(rng);
            REQUIRE(t.is_valid());
        }
    }
}

TEST_CASE("dot output names all leaves and edges") {
    std::mt19937_64 rng(5);
    const auto t = UnrootedTernaryTree::random_tree(letters(5), rng);
    const auto dot = t.to_dot();
    CHECK(dot.find("graph") != std::string::npos);
    for (const auto& l : letters(5)) CHECK(dot.find("label=\"" + l + "\"") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '-') >= 2 * 7); // 7 edges as "--"
}

TEST_CASE("label validation") {
    std::mt19937_64 rng(6);
    CHECK_THROWS_AS(UnrootedTernaryTree::random_tree({"a", "b", "c"}, rng), ValidationError);
    CHECK_THROWS_AS(UnrootedTernaryTree::random_tree({"a", "b", "c", "a"}, rng), ValidationError);
    CHECK_THROWS_AS(UnrootedTernaryTree::parse_newick("(a,b,c)"), ValidationError);
    CHECK_THROWS_AS(UnrootedTernaryTree::parse_newick("(a,b);"), ValidationError);
}
