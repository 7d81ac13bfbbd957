#include "nid/tree.hpp"
#include "nid/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <sstream>
#include <unordered_set>

namespace nid {

namespace {

void check_labels(const std::vector<std::string>& labels) {
    if (labels.size() < 4) throw ValidationError("ternary tree needs at least 4 leaves");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw ValidationError("empty leaf label");
        if (!seen.insert(l).second) throw ValidationError("duplicate leaf label: '" + l + "'");
    }
}

} // namespace

int UnrootedTernaryTree::add_node() {
    adj_.emplace_back();
    return static_cast<int>(adj_.size()) - 1;
}

void UnrootedTernaryTree::add_edge(int u, int v) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
}

void UnrootedTernaryTree::remove_edge(int u, int v) {
    auto& au = adj_[static_cast<std::size_t>(u)];
    auto& av = adj_[static_cast<std::size_t>(v)];
    au.erase(std::find(au.begin(), au.end(), v));
    av.erase(std::find(av.begin(), av.end(), u));
}

void UnrootedTernaryTree::insert_leaf_on_edge(int leaf, std::pair<int, int> edge) {
    const int mid = add_node();
    remove_edge(edge.first, edge.second);
    add_edge(edge.first, mid);
    add_edge(mid, edge.second);
    add_edge(mid, leaf);
}

UnrootedTernaryTree UnrootedTernaryTree::random_tree(std::vector<std::string> labels,
                                                     std::mt19937_64& rng) {
    check_labels(labels);
    UnrootedTernaryTree t;
    t.labels_ = std::move(labels);
    const int n = static_cast<int>(t.labels_.size());
    for (int i = 0; i < n; ++i) t.add_node();
    const int hub = t.add_node();
    for (int i = 0; i < 3; ++i) t.add_edge(i, hub);
    for (int leaf = 3; leaf < n; ++leaf) {
        const auto es = t.edges();
        std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
        t.insert_leaf_on_edge(leaf, es[pick(rng)]);
    }
    return t;
}

UnrootedTernaryTree UnrootedTernaryTree::caterpillar(std::vector<std::string> labels) {
    check_labels(labels);
    UnrootedTernaryTree t;
    t.labels_ = std::move(labels);
    const int n = static_cast<int>(t.labels_.size());
    for (int i = 0; i < n; ++i) t.add_node();
    const int hub = t.add_node();
    for (int i = 0; i < 3; ++i) t.add_edge(i, hub);
    for (int leaf = 3; leaf < n; ++leaf) {
        // Hang each new leaf next to the previous one.
        const int prev = leaf - 1;
        const int parent = t.adj_[static_cast<std::size_t>(prev)][0];
        t.insert_leaf_on_edge(leaf, {prev, parent});
    }
    return t;
}

void UnrootedTernaryTree::enumerate_all(
    std::vector<std::string> labels,
    const std::function<void(const UnrootedTernaryTree&)>& visit) {
    check_labels(labels);
    const int n = static_cast<int>(labels.size());
    UnrootedTernaryTree seed;
    seed.labels_ = std::move(labels);
    for (int i = 0; i < n; ++i) seed.add_node();
    const int hub = seed.add_node();
    for (int i = 0; i < 3; ++i) seed.add_edge(i, hub);

    std::function<void(const UnrootedTernaryTree&, int)> grow = [&](const UnrootedTernaryTree& t,
                                                                    int leaf) {
        if (leaf == n) {
            visit(t);
            return;
        }
        for (const auto& edge : t.edges()) {
            UnrootedTernaryTree next = t;
            next.insert_leaf_on_edge(leaf, edge);
            grow(next, leaf + 1);
        }
    };
    grow(seed, 3);
}

bool UnrootedTernaryTree::is_valid() const {
    const std::size_t n = labels_.size();
    if (n < 4 || adj_.size() != 2 * n - 2) return false;
    std::size_t edge_ends = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
        const std::size_t want = v < n ? 1 : 3;
        if (adj_[v].size() != want) return false;
        edge_ends += adj_[v].size();
    }
    if (edge_ends != 2 * (2 * n - 3)) return false;
    // Connectivity.
    std::vector<bool> seen(adj_.size(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    std::size_t visited = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        ++visited;
        for (int w : adj_[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                queue.push_back(w);
            }
    }
    return visited == adj_.size();
}

Eigen::MatrixXi UnrootedTernaryTree::leaf_distances() const {
    const auto n = static_cast<int>(labels_.size());
    Eigen::MatrixXi d(n, n);
    std::vector<int> dist(adj_.size());
    for (int src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(src)] = 0;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : adj_[static_cast<std::size_t>(v)])
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(w);
                }
        }
        for (int j = 0; j < n; ++j) d(src, j) = dist[static_cast<std::size_t>(j)];
    }
    return d;
}

std::vector<std::pair<int, int>> UnrootedTernaryTree::edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t u = 0; u < adj_.size(); ++u)
        for (int v : adj_[u])
            if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v);
    return out;
}

std::vector<bool> UnrootedTernaryTree::component(int start, std::pair<int, int> blocked) const {
    std::vector<bool> in(adj_.size(), false);
    in[static_cast<std::size_t>(start)] = true;
    std::deque<int> queue{start};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : adj_[static_cast<std::size_t>(v)]) {
            if ((v == blocked.first && w == blocked.second) ||
                (v == blocked.second && w == blocked.first))
                continue;
            if (!in[static_cast<std::size_t>(w)]) {
                in[static_cast<std::size_t>(w)] = true;
                queue.push_back(w);
            }
        }
    }
    return in;
}

void UnrootedTernaryTree::swap_leaf_labels(int leaf_a, int leaf_b) {
    std::swap(labels_[static_cast<std::size_t>(leaf_a)], labels_[static_cast<std::size_t>(leaf_b)]);
}

bool UnrootedTernaryTree::try_leaf_swap(std::mt19937_64& rng) {
    const int n = static_cast<int>(labels_.size());
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int a = pick(rng);
    int b = pick(rng);
    if (b == a) b = (b + 1) % n;
    swap_leaf_labels(a, b);
    return true;
}

bool UnrootedTernaryTree::try_subtree_swap(std::mt19937_64& rng) {
    const auto es = edges();
    std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto e1 = es[pick(rng)];
        if (flip(rng)) std::swap(e1.first, e1.second);
        auto e2 = es[pick(rng)];
        if (flip(rng)) std::swap(e2.first, e2.second);
        const int a = e1.first, pa = e1.second;
        const int b = e2.first, pb = e2.second;
        if (a == b) continue;
        if (a == pb && b == pa) continue; // same edge, opposite orientations
        const auto side_a = component(a, {a, pa});
        if (side_a[static_cast<std::size_t>(b)]) continue;
        const auto side_b = component(b, {b, pb});
        if (side_b[static_cast<std::size_t>(a)]) continue;
        remove_edge(a, pa);
        remove_edge(b, pb);
        add_edge(a, pb);
        add_edge(b, pa);
        return true;
    }
    return false;
}

bool UnrootedTernaryTree::try_subtree_transfer(std::mt19937_64& rng) {
    const std::size_t n = labels_.size();
    const auto es = edges();
    std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto e = es[pick(rng)];
        int s = e.first, p = e.second;
        // p must be internal; the subtree hanging at s moves.
        const bool s_internal = static_cast<std::size_t>(s) >= n;
        const bool p_internal = static_cast<std::size_t>(p) >= n;
        if (!p_internal && !s_internal) continue; // cannot happen in a valid tree
        if (s_internal && p_internal) {
            if (flip(rng)) std::swap(s, p);
        } else if (!p_internal) {
            std::swap(s, p);
        }

        const auto moving = component(s, {s, p});
        remove_edge(s, p);
        // Contract p: it has exactly two remaining neighbors.
        const int u = adj_[static_cast<std::size_t>(p)][0];
        const int w = adj_[static_cast<std::size_t>(p)][1];
        remove_edge(p, u);
        remove_edge(p, w);
        add_edge(u, w);

        // Target edges live in the remaining component only.
        std::vector<std::pair<int, int>> targets;
        for (const auto& [x, y] : edges())
            if (!moving[static_cast<std::size_t>(x)] && x != p && y != p)
                targets.push_back({x, y});
        std::uniform_int_distribution<std::size_t> tpick(0, targets.size() - 1);
        const auto [x, y] = targets[tpick(rng)];
        remove_edge(x, y);
        add_edge(x, p);
        add_edge(p, y);
        add_edge(p, s);
        return true;
    }
    return false;
}

bool UnrootedTernaryTree::apply_random_mutation(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kernel(0, 2);
    switch (kernel(rng)) {
    case 0:
        return try_leaf_swap(rng);
    case 1:
        return try_subtree_swap(rng);
    default:
        return try_subtree_transfer(rng);
    }
}

namespace {

struct RenderedSubtree {
    std::string min_leaf;
    std::string text;
};

} // namespace

std::string UnrootedTernaryTree::to_newick() const {
    const int n = static_cast<int>(labels_.size());
    int smallest = 0;
    for (int i = 1; i < n; ++i)
        if (labels_[static_cast<std::size_t>(i)] < labels_[static_cast<std::size_t>(smallest)])
            smallest = i;
    const int root = adj_[static_cast<std::size_t>(smallest)][0];

    std::function<RenderedSubtree(int, int)> render = [&](int node, int parent) -> RenderedSubtree {
        if (node < n) return {labels_[static_cast<std::size_t>(node)], labels_[static_cast<std::size_t>(node)]};
        std::vector<RenderedSubtree> kids;
        for (int w : adj_[static_cast<std::size_t>(node)])
            if (w != parent) kids.push_back(render(w, node));
        std::sort(kids.begin(), kids.end(),
                  [](const RenderedSubtree& a, const RenderedSubtree& b) { return a.min_leaf < b.min_leaf; });
        std::string text = "(";
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i) text += ',';
            text += kids[i].text;
        }
        text += ')';
        return {kids.front().min_leaf, std::move(text)};
    };

    std::vector<RenderedSubtree> kids;
    for (int w : adj_[static_cast<std::size_t>(root)]) kids.push_back(render(w, root));
    std::sort(kids.begin(), kids.end(),
              [](const RenderedSubtree& a, const RenderedSubtree& b) { return a.min_leaf < b.min_leaf; });
    std::string out = "(";
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        out += kids[i].text;
    }
    out += ");";
    return out;
}

std::string UnrootedTernaryTree::to_dot() const {
    std::ostringstream os;
    os << "graph dendrogram {\n";
    for (std::size_t v = 0; v < adj_.size(); ++v) {
        if (v < labels_.size())
            os << "  n" << v << " [shape=box, label=\"" << labels_[v] << "\"];\n";
        else
            os << "  n" << v << " [shape=point];\n";
    }
    for (const auto& [u, v] : edges()) os << "  n" << u << " -- n" << v << ";\n";
    os << "}\n";
    return os.str();
}

namespace {

struct ParsedNode {
    std::string label; // non-empty for leaves
    std::vector<std::unique_ptr<ParsedNode>> children;
};

std::unique_ptr<ParsedNode> parse_node(const std::string& s, std::size_t& pos) {
    auto node = std::make_unique<ParsedNode>();
    if (pos < s.size() && s[pos] == '(') {
        ++pos;
        while (true) {
            node->children.push_back(parse_node(s, pos));
            if (pos >= s.size()) throw ValidationError("newick: unterminated group");
            if (s[pos] == ',') {
                ++pos;
                continue;
            }
            if (s[pos] == ')') {
                ++pos;
                break;
            }
            throw ValidationError("newick: unexpected character");
        }
    } else {
        while (pos < s.size() && s[pos] != ',' && s[pos] != ')' && s[pos] != '(' && s[pos] != ';')
            node->label += s[pos++];
        if (node->label.empty()) throw ValidationError("newick: empty label");
    }
    return node;
}

} // namespace

UnrootedTernaryTree UnrootedTernaryTree::parse_newick(const std::string& text) {
    std::size_t pos = 0;
    auto root = parse_node(text, pos);
    if (pos >= text.size() || text[pos] != ';') throw ValidationError("newick: missing semicolon");
    if (root->children.size() != 3)
        throw ValidationError("newick: root of an unrooted ternary tree needs 3 children");

    std::vector<std::string> labels;
    std::function<void(const ParsedNode&)> collect = [&](const ParsedNode& node) {
        if (node.children.empty()) {
            labels.push_back(node.label);
            return;
        }
        for (const auto& c : node.children) collect(*c);
    };
    collect(*root);
    check_labels(labels);

    UnrootedTernaryTree t;
    t.labels_ = labels;
    for (std::size_t i = 0; i < labels.size(); ++i) t.add_node();

    std::size_t next_leaf = 0;
    std::function<int(const ParsedNode&)> build = [&](const ParsedNode& node) -> int {
        if (node.children.empty()) return static_cast<int>(next_leaf++);
        if (node.children.size() != 2 && &node != root.get())
            throw ValidationError("newick: internal node must have 2 children");
        const int id = t.add_node();
        for (const auto& c : node.children) t.add_edge(id, build(*c));
        return id;
    };
    build(*root);
    if (!t.is_valid()) throw ValidationError("newick: not a valid ternary tree");
    return t;
}

} // namespace nid
