// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria 1-9 exercise the library directly; criterion
// 10 drives the actual CLI binary end to end.

#include "nid/compressor.hpp"
#include "nid/distance_matrix.hpp"
#include "nid/multilist.hpp"
#include "nid/ncd.hpp"
#include "nid/nwd.hpp"
#include "nid/quartet.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <iterator>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace nid;

namespace {

std::string random_bytes(std::size_t n, std::mt19937_64& rng) {
    std::string s(n, '\0');
    for (auto& c : s) c = static_cast<char>(rng() % 256);
    return s;
}

struct FixedProvider final : FrequencyProvider {
    std::uint64_t fx = 0, fy = 0, fxy = 0, n = 1;
    std::uint64_t count(const std::string& t) const override { return t == "x" ? fx : fy; }
    std::uint64_t pair_count(const std::string& a, const std::string& b) const override {
        return a == b ? count(a) : fxy;
    }
    std::uint64_t normalizer() const override { return n; }
    std::uint64_t page_count() const override { return n; }
};

std::vector<std::string> letters(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

DistanceMatrix random_matrix(int n, std::mt19937_64& rng) {
    DistanceMatrix d;
    d.labels = letters(n);
    d.values.resize(n, n);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int i = 0; i < n; ++i) {
        d.values(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) d.values(i, j) = d.values(j, i) = u(rng);
    }
    return d;
}

// --- criterion bodies ------------------------------------------------

bool nwd_formula_identity(std::string& detail) {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 1000; ++i) {
        FixedProvider p;
        p.fxy = 1 + rng() % 64;
        p.fx = p.fxy + rng() % 64;
        p.fy = p.fxy + rng() % 64;
        p.n = std::max(p.fx, p.fy) + 1 + rng() % 4096;
        const auto direct = nwd("x", "y", p);
        if (direct.tag != NwdTag::Finite) {
            detail = "unexpected non-finite case";
            return false;
        }
        const double via_g = nwd_from_codelengths(code_length("x", p), code_length("y", p),
                                                  pair_code_length("x", "y", p));
        if (std::abs(direct.value - via_g) >= 1e-12) {
            detail = "G-form mismatch " + std::to_string(std::abs(direct.value - via_g));
            return false;
        }
        // log-base invariance: recompute with natural logs
        const double lx = std::log(double(p.fx)), ly = std::log(double(p.fy));
        const double nat = (std::max(lx, ly) - std::log(double(p.fxy))) /
                           (std::log(double(p.n)) - std::min(lx, ly));
        if (std::abs(direct.value - nat) >= 1e-12) {
            detail = "log-base dependence detected";
            return false;
        }
    }
    return true;
}

bool nwd_case_totality(std::string& detail) {
    for (std::uint64_t fx = 0; fx <= 8; ++fx)
        for (std::uint64_t fy = 0; fy <= 8; ++fy)
            for (std::uint64_t fxy = 0; fxy <= std::min(fx, fy); ++fxy) {
                FixedProvider p;
                p.fx = fx;
                p.fy = fy;
                p.fxy = fxy;
                p.n = 64;
                const auto v = nwd("x", "y", p);
                const bool undefined = fx == 0 && fy == 0;
                const bool infinite = !undefined && fxy == 0;
                const NwdTag want = undefined ? NwdTag::Undefined
                                   : infinite ? NwdTag::Infinite
                                              : NwdTag::Finite;
                if (v.tag != want) {
                    detail = "wrong case at f=(" + std::to_string(fx) + "," + std::to_string(fy) +
                             "," + std::to_string(fxy) + ")";
                    return false;
                }
                if (v.tag == NwdTag::Finite && v.value < 0) {
                    detail = "negative finite value";
                    return false;
                }
            }
    FixedProvider hand;
    hand.fx = 8;
    hand.fy = 4;
    hand.fxy = 2;
    hand.n = 64;
    const auto v = nwd("x", "y", hand);
    if (v.tag != NwdTag::Finite || v.value != 0.5) {
        detail = "hand value (8,4,2,N=64) != 0.5";
        return false;
    }
    return true;
}

bool ncd_symmetry_and_metricity(std::string& detail) {
    BuiltinLzCompressor lz;
    std::mt19937_64 rng(102);
    std::vector<DataObject> corpus;
    for (int i = 0; i < 20; ++i)
        corpus.push_back({"o" + std::to_string(i), random_bytes(4096, rng)});
    const auto m = ncd_matrix(corpus, lz);
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (m.values(i, j) != m.values(j, i)) {
                detail = "not exactly symmetric";
                return false;
            }
            if (m.values(i, j) < 0.0 || m.values(i, j) > 1.1) {
                detail = "entry out of [0, 1.1]: " + std::to_string(m.values(i, j));
                return false;
            }
        }
    std::size_t triples = 0, ok = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                ++triples;
                if (m.values(i, k) <= m.values(i, j) + m.values(j, k) + 0.1) ++ok;
            }
    const double frac = double(ok) / double(triples);
    detail = "triangle fraction " + std::to_string(frac);
    return frac >= 0.95;
}

// A word-salad paragraph tiled to `size`; the repeat period (~16 KiB) sits
// well inside the compressor window, like a text with recurring passages.
std::string structured_text(std::size_t size, std::mt19937_64& rng) {
    static const char* words[] = {"information", "distance",  "between", "objects", "the",
                                  "compression", "similar",   "pattern", "theory",  "web",
                                  "page",        "frequency", "string",  "of",      "and"};
    std::string paragraph;
    while (paragraph.size() < 16 * 1024) {
        paragraph += words[rng() % 15];
        paragraph += (rng() % 12 == 0) ? ".\n" : " ";
    }
    std::string text;
    while (text.size() < size) text += paragraph;
    text.resize(size);
    return text;
}

bool ncd_diagonal_ordering(std::string& detail) {
    BuiltinLzCompressor lz;
    std::mt19937_64 rng(103);
    const DataObject x{"x", structured_text(100 * 1024, rng)};
    const DataObject r{"r", random_bytes(100 * 1024, rng)};
    const double self = ncd(x, x, lz);
    const double cross = ncd(x, r, lz);
    detail = "NCD(x,x)=" + std::to_string(self) + " NCD(x,rand)=" + std::to_string(cross);
    return self < cross - 0.2;
}

bool quartet_oracle_agreement(std::string& detail) {
    std::mt19937_64 rng(104);
    for (int n : {5, 6})
        for (int trial = 0; trial < 20; ++trial) {
            const auto d = random_matrix(n, rng);
            const auto oracle = exhaustive_best(d);
            const auto climbed = hill_climb(d, static_cast<std::uint64_t>(trial), 2000, 8);
            if (std::abs(oracle.score - climbed.score) > 1e-12) {
                detail = "n=" + std::to_string(n) + " trial " + std::to_string(trial) +
                         ": oracle " + std::to_string(oracle.score) + " vs climb " +
                         std::to_string(climbed.score);
                return false;
            }
        }
    return true;
}

bool additive_recovery(std::string& detail) {
    int recovered = 0;
    for (int seed = 0; seed < 20; ++seed) {
        std::mt19937_64 gen_rng(static_cast<std::uint64_t>(seed) * 31 + 7);
        const auto truth = UnrootedTernaryTree::random_tree(letters(8), gen_rng);
        DistanceMatrix d;
        d.labels = truth.leaf_labels();
        d.values = truth.leaf_distances().cast<double>();
        const auto r = hill_climb(d, static_cast<std::uint64_t>(seed), 2000, 8);
        if (std::abs(r.score - 1.0) < 1e-12 && r.tree.to_newick() == truth.to_newick())
            ++recovered;
    }
    detail = std::to_string(recovered) + "/20 recovered";
    return recovered >= 19;
}

bool affine_invariance(std::string& detail) {
    std::mt19937_64 rng(105);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 5);
        const auto d = random_matrix(n, rng);
        const auto t = UnrootedTernaryTree::random_tree(d.labels, rng);
        const double s = tree_score(t, d);
        DistanceMatrix scaled = d;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) scaled.values(i, j) = 3.0 * d.values(i, j) + 0.5;
        const double s2 = tree_score(t, scaled);
        if (std::abs(s - s2) > 1e-9) {
            detail = "drift " + std::to_string(std::abs(s - s2));
            return false;
        }
    }
    return true;
}

bool multilist_sandwich(std::string& detail) {
    RunLengthCompressor rle;
    const auto triple = StringList::canonical_order({"aaaa", "bbbb", "cccc"});
    // Hand evaluation: Z(singles)=2 each, Z(triple)=6, Z(pair joints)=4,
    // so e_min = e_max = 4 and the bound is min_i (2+2) = 4.
    if (e_max_est(triple, rle) != 4.0 || e_min_est(triple, rle) != 4.0 ||
        pairwise_bound(triple, rle) != 4.0) {
        detail = "rle triple is not 4 / 4 / 4";
        return false;
    }

    BuiltinLzCompressor lz;
    std::mt19937_64 rng(106);
    int ok = 0;
    for (int i = 0; i < 50; ++i) {
        const auto x = StringList::canonical_order(
            {random_bytes(4096, rng), random_bytes(4096, rng), random_bytes(4096, rng)});
        const auto rep = check_sandwich(x, lz);
        if (rep.e_min_est > rep.e_max_est) {
            detail = "zero-slack left inequality violated";
            return false;
        }
        if (rep.sandwich_ok) ++ok;
    }
    detail = std::to_string(ok) + "/50 sandwich_ok";
    return ok >= 48;
}

bool pair_coincidence(std::string& detail) {
    BuiltinLzCompressor lz;
    std::mt19937_64 rng(107);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_bytes(32 + rng() % 4096, rng);
        const auto b = random_bytes(32 + rng() % 4096, rng);
        const auto pair = StringList::canonical_order({a, b});
        const double numerator = static_cast<double>(compress_len_joint(lz, a, b)) -
                                 static_cast<double>(std::min(compress_len(lz, a), compress_len(lz, b)));
        if (e_max_est(pair, lz) != numerator) {
            detail = "pair " + std::to_string(i) + " differs";
            return false;
        }
    }
    return true;
}

// --- end-to-end clustering helpers ------------------------------------

std::string markov_doc(int generator, std::uint64_t doc_seed, std::size_t size) {
    // Order-2 Markov source over a 16-letter alphabet; each generator fixes
    // its own sparse successor table (2 successors per context).
    constexpr int kAlpha = 16;
    std::mt19937_64 table_rng(0xC0FFEE + static_cast<std::uint64_t>(generator) * 7919);
    std::vector<std::array<char, 2>> table(kAlpha * kAlpha);
    for (auto& entry : table)
        entry = {static_cast<char>('a' + table_rng() % kAlpha),
                 static_cast<char>('a' + table_rng() % kAlpha)};
    std::mt19937_64 rng(doc_seed);
    std::string doc = "ab";
    doc.reserve(size);
    while (doc.size() < size) {
        const int ctx = (doc[doc.size() - 2] - 'a') * kAlpha + (doc.back() - 'a');
        doc += table[static_cast<std::size_t>(ctx)][rng() % 2];
    }
    return doc;
}

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
    const auto out_file = dir / "cli-out.txt";
    const std::string cmd =
        std::string(NID_CLI_PATH) + " " + args + " > '" + out_file.string() + "' 2> /dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream f(out_file, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

// True when some edge of t splits off exactly `group`.
bool has_pure_subtree(const UnrootedTernaryTree& t, const std::set<std::string>& group) {
    const int n_leaves = static_cast<int>(t.leaf_count());
    std::set<std::string> all(t.leaf_labels().begin(), t.leaf_labels().end());
    for (const auto& [u, v] : t.edges()) {
        std::vector<bool> seen(t.node_count(), false);
        seen[static_cast<std::size_t>(u)] = true;
        std::vector<int> stack{u};
        std::set<std::string> side;
        while (!stack.empty()) {
            const int w = stack.back();
            stack.pop_back();
            if (w < n_leaves) side.insert(t.leaf_labels()[static_cast<std::size_t>(w)]);
            for (int x : t.neighbors(w)) {
                if ((w == u && x == v) || seen[static_cast<std::size_t>(x)]) continue;
                seen[static_cast<std::size_t>(x)] = true;
                stack.push_back(x);
            }
        }
        if (side == group) return true;
        std::set<std::string> other;
        std::set_difference(all.begin(), all.end(), side.begin(), side.end(),
                            std::inserter(other, other.begin()));
        if (other == group) return true;
    }
    return false;
}

bool end_to_end_clustering(std::string& detail) {
    const fs::path dir = fs::temp_directory_path() / ("nid-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir / "docs");

    std::vector<std::set<std::string>> groups(3);
    for (int g = 0; g < 3; ++g)
        for (int i = 0; i < 4; ++i) {
            const std::string name = "g" + std::to_string(g) + "_" + std::to_string(i) + ".txt";
            std::ofstream f(dir / "docs" / name, std::ios::binary);
            f << markov_doc(g, static_cast<std::uint64_t>(g) * 100 + static_cast<std::uint64_t>(i),
                            8192);
            groups[static_cast<std::size_t>(g)].insert(name);
        }

    const auto matrix_path = dir / "matrix.tsv";
    const auto ncd_run = run_cli("ncd '" + (dir / "docs").string() + "' -o '" +
                                     matrix_path.string() + "'",
                                 dir);
    if (ncd_run.exit_code != 0) {
        detail = "cmd_ncd failed";
        return false;
    }

    int good = 0;
    for (int seed = 0; seed < 20; ++seed) {
        const auto score_path = dir / "score.txt";
        const auto cluster_run =
            run_cli("cluster '" + matrix_path.string() + "' --seed " + std::to_string(seed) +
                        " --score-out '" + score_path.string() + "'",
                    dir);
        if (cluster_run.exit_code != 0) continue;
        double score = -1.0;
        {
            std::ifstream f(score_path);
            std::string tag;
            std::getline(f, tag);
            const auto eq = tag.find('=');
            if (eq != std::string::npos) score = std::stod(tag.substr(eq + 1));
        }
        std::string newick = cluster_run.out;
        while (!newick.empty() && (newick.back() == '\n' || newick.back() == '\r'))
            newick.pop_back();
        const auto tree = UnrootedTernaryTree::parse_newick(newick);
        const bool pure = has_pure_subtree(tree, groups[0]) && has_pure_subtree(tree, groups[1]) &&
                          has_pure_subtree(tree, groups[2]);
        if (pure && score >= 0.9) ++good;
    }
    fs::remove_all(dir);
    detail = std::to_string(good) + "/20 seeds generator-pure with S >= 0.9";
    return good >= 18;
}

struct Criterion {
    const char* name;
    std::function<bool(std::string&)> body;
    double time_limit_s; // 0 = unlimited
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1. NWD formula identity and log-base invariance (1e-12)", nwd_formula_identity, 1.0},
        {"2. NWD case totality and hand value 0.5", nwd_case_totality, 0.0},
        {"3. NCD exact symmetry, range, approximate metricity", ncd_symmetry_and_metricity, 30.0},
        {"4. NCD(x,x) < NCD(x,random) - 0.2 on structured text", ncd_diagonal_ordering, 0.0},
        {"5. quartet hill climb matches exhaustive oracle (n=5,6)", quartet_oracle_agreement, 10.0},
        {"6. additive-tree recovery at n=8 (>= 19/20 seeds)", additive_recovery, 60.0},
        {"7. affine invariance of S(T) (1e-9)", affine_invariance, 0.0},
        {"8. multilist sandwich inequality", multilist_sandwich, 0.0},
        {"9. pair coincidence with the NCD numerator", pair_coincidence, 0.0},
        {"10. end-to-end clustering of 3 Markov sources", end_to_end_clustering, 120.0},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0 && elapsed > c.time_limit_s) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
        }
        std::printf("%s  %-58s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.name, elapsed,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
