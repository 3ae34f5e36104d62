// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/tree.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace nacest {

namespace {

std::string describe_set(LeafSet s, const std::vector<std::string>* labels) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int i = 0; i < kMaxLeaves; ++i) {
        if (!(s >> i & 1)) continue;
        if (!first) out << ',';
        first = false;
        if (labels && i < static_cast<int>(labels->size())) out << (*labels)[i];
        else out << i;
    }
    out << '}';
    return out.str();
}

int lowest_leaf(LeafSet s) { return std::countr_zero(s); }

}  // namespace

int leafset_size(LeafSet s) { return std::popcount(s); }

LeafSet full_leafset(int d) {
    if (d <= 0 || d > kMaxLeaves) throw std::invalid_argument("leaf count must be in [1, 64]");
    return d == kMaxLeaves ? ~LeafSet{0} : (LeafSet{1} << d) - 1;
}

TripleKey make_triple_key(int a, int b, int c) {
    std::array<int, 3> idx{a, b, c};
    std::sort(idx.begin(), idx.end());
    if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] < 0) {
        throw std::invalid_argument("triple key requires three distinct leaf indices");
    }
    return TripleKey{idx};
}

TreeValidation validate_nodes(int leaf_count, const std::vector<LeafSet>& nodes) {
    TreeValidation v;
    const LeafSet root = full_leafset(leaf_count);
    std::unordered_set<LeafSet> present(nodes.begin(), nodes.end());
    if (!present.count(root)) {
        v.ok = false;
        v.clause = 1;
        v.message = "root node " + describe_set(root, nullptr) + " is missing";
        return v;
    }
    for (int i = 0; i < leaf_count; ++i) {
        if (!present.count(LeafSet{1} << i)) {
            v.ok = false;
            v.clause = 2;
            v.offender_a = LeafSet{1} << i;
            v.message = "singleton {" + std::to_string(i) + "} is missing";
            return v;
        }
    }
    std::vector<LeafSet> uniq(present.begin(), present.end());
    for (std::size_t a = 0; a < uniq.size(); ++a) {
        if (uniq[a] == 0 || (uniq[a] & ~root) != 0) {
            v.ok = false;
            v.clause = 1;
            v.offender_a = uniq[a];
            v.message = "node " + describe_set(uniq[a], nullptr) + " is empty or not a subset of the leaf set";
            return v;
        }
        for (std::size_t b = a + 1; b < uniq.size(); ++b) {
            const LeafSet common = uniq[a] & uniq[b];
            if (common != 0 && common != uniq[a] && common != uniq[b]) {
                v.ok = false;
                v.clause = 3;
                v.offender_a = uniq[a];
                v.offender_b = uniq[b];
                v.message = "nodes " + describe_set(uniq[a], nullptr) + " and " +
                            describe_set(uniq[b], nullptr) + " overlap without nesting";
                return v;
            }
        }
    }
    return v;
}

TreeStructure::TreeStructure(std::vector<std::string> leaves, std::vector<LeafSet> nodes)
    : leaves_(std::move(leaves)) {
    const int d = static_cast<int>(leaves_.size());
    if (d < 1 || d > kMaxLeaves) throw std::invalid_argument("tree supports 1 to 64 leaves");
    std::set<std::string> label_set(leaves_.begin(), leaves_.end());
    if (static_cast<int>(label_set.size()) != d) throw std::invalid_argument("duplicate leaf labels");
    for (const auto& l : leaves_) {
        if (l.empty() || l.find_first_of("(),") != std::string::npos || l.find_first_of(" \t\n") != std::string::npos) {
            throw std::invalid_argument("leaf label must be nonempty and free of '(', ')', ',' and whitespace: '" + l + "'");
        }
    }
    const TreeValidation v = validate_nodes(d, nodes);
    if (!v.ok) throw std::invalid_argument("invalid tree structure: " + v.message);
    std::set<LeafSet> uniq(nodes.begin(), nodes.end());
    nodes_.assign(uniq.begin(), uniq.end());
    std::sort(nodes_.begin(), nodes_.end(), [](LeafSet a, LeafSet b) {
        const int sa = leafset_size(a), sb = leafset_size(b);
        return sa != sb ? sa < sb : a < b;
    });
}

LeafSet TreeStructure::root() const { return full_leafset(leaf_count()); }

bool TreeStructure::has_node(LeafSet s) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), s, [](LeafSet a, LeafSet b) {
        const int sa = leafset_size(a), sb = leafset_size(b);
        return sa != sb ? sa < sb : a < b;
    });
}

std::vector<LeafSet> TreeStructure::branching_nodes() const {
    std::vector<LeafSet> out;
    for (LeafSet s : nodes_)
        if (leafset_size(s) >= 2) out.push_back(s);
    return out;
}

std::vector<LeafSet> TreeStructure::children(LeafSet node) const {
    if (!has_node(node)) throw std::invalid_argument("children: not a node of this tree");
    std::vector<LeafSet> out;
    for (LeafSet s : nodes_) {
        if (s == node || (s & node) != s) continue;  // not a proper subset
        bool maximal = true;
        for (LeafSet t : nodes_) {
            if (t == s || t == node) continue;
            if ((s & t) == s && (t & node) == t) {  // s < t < node
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](LeafSet a, LeafSet b) { return lowest_leaf(a) < lowest_leaf(b); });
    return out;
}

int TreeStructure::leaf_index(const std::string& label) const {
    for (std::size_t i = 0; i < leaves_.size(); ++i)
        if (leaves_[i] == label) return static_cast<int>(i);
    return -1;
}

bool TreeStructure::same_structure(const TreeStructure& other) const {
    auto label_nodes = [](const TreeStructure& t) {
        std::set<std::vector<std::string>> out;
        for (LeafSet s : t.nodes()) {
            std::vector<std::string> labels;
            for (int i = 0; i < t.leaf_count(); ++i)
                if (s >> i & 1) labels.push_back(t.leaves()[i]);
            std::sort(labels.begin(), labels.end());
            out.insert(std::move(labels));
        }
        return out;
    };
    std::set<std::string> la(leaves_.begin(), leaves_.end());
    std::set<std::string> lb(other.leaves_.begin(), other.leaves_.end());
    return la == lb && label_nodes(*this) == label_nodes(other);
}

LeafSet lca(const TreeStructure& tree, LeafSet t) {
    if (leafset_size(t) < 2) throw std::invalid_argument("lca requires at least two leaves");
    if ((t & tree.root()) != t) throw std::invalid_argument("lca: leaves outside the tree");
    LeafSet acc = tree.root();
    for (LeafSet node : tree.nodes()) {
        if ((t & node) == t) acc &= node;
    }
    return acc;
}

TreeStructure induce(const TreeStructure& tree, LeafSet a) {
    if (a == 0) throw std::invalid_argument("induce: empty leaf subset");
    if ((a & tree.root()) != a) throw std::invalid_argument("induce: leaves outside the tree");
    std::vector<std::string> labels;
    std::vector<int> remap(tree.leaf_count(), -1);
    for (int i = 0; i < tree.leaf_count(); ++i) {
        if (a >> i & 1) {
            remap[i] = static_cast<int>(labels.size());
            labels.push_back(tree.leaves()[i]);
        }
    }
    std::set<LeafSet> induced;
    for (LeafSet node : tree.nodes()) {
        LeafSet cut = node & a;
        if (cut == 0) continue;
        LeafSet mapped = 0;
        for (int i = 0; i < tree.leaf_count(); ++i)
            if (cut >> i & 1) mapped |= LeafSet{1} << remap[i];
        induced.insert(mapped);
    }
    return TreeStructure(std::move(labels), {induced.begin(), induced.end()});
}

std::map<TripleKey, TreeStructure> triples(const TreeStructure& tree) {
    const int d = tree.leaf_count();
    if (d < 3) throw std::invalid_argument("triples requires at least three leaves");
    std::map<TripleKey, TreeStructure> out;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                const LeafSet mask = (LeafSet{1} << i) | (LeafSet{1} << j) | (LeafSet{1} << k);
                out.emplace(TripleKey{{i, j, k}}, induce(tree, mask));
            }
    return out;
}

namespace {

void format_node(const TreeStructure& tree, LeafSet node, std::string& out) {
    if (leafset_size(node) == 1) {
        out += tree.leaves()[lowest_leaf(node)];
        return;
    }
    out += '(';
    bool first = true;
    for (LeafSet child : tree.children(node)) {
        if (!first) out += ',';
        first = false;
        format_node(tree, child, out);
    }
    out += ')';
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    std::vector<std::string> labels;
    std::vector<LeafSet> nodes;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    LeafSet parse_node() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (text[pos] == '(') {
            ++pos;
            LeafSet acc = 0;
            int children = 0;
            while (true) {
                acc |= parse_node();
                ++children;
                skip_ws();
                if (pos >= text.size()) fail("missing ')'");
                if (text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                fail(std::string("expected ',' or ')', got '") + text[pos] + "'");
            }
            if (children < 2) fail("a branching node needs at least two children");
            nodes.push_back(acc);
            return acc;
        }
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ',' &&
               text[pos] != ' ' && text[pos] != '\t')
            ++pos;
        if (pos == start) fail(std::string("expected a leaf label, got '") + text[pos] + "'");
        std::string label = text.substr(start, pos - start);
        for (const auto& l : labels)
            if (l == label) fail("duplicate leaf label '" + label + "'");
        if (labels.size() >= kMaxLeaves) fail("more than 64 leaves");
        labels.push_back(label);
        const LeafSet mask = LeafSet{1} << (labels.size() - 1);
        nodes.push_back(mask);
        return mask;
    }
};

}  // namespace

std::string format_tree(const TreeStructure& tree) {
    std::string out;
    format_node(tree, tree.root(), out);
    return out;
}

TreeStructure parse_tree(const std::string& text) {
    Parser p{text};
    p.parse_node();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters after the tree");
    return TreeStructure(std::move(p.labels), std::move(p.nodes));
}

TreeStructure tree_from_label_nodes(const std::vector<std::string>& leaves,
                                    const std::vector<std::vector<std::string>>& nodes) {
    std::vector<LeafSet> masks;
    masks.reserve(nodes.size());
    for (const auto& node : nodes) {
        LeafSet mask = 0;
        for (const auto& label : node) {
            int idx = -1;
            for (std::size_t i = 0; i < leaves.size(); ++i)
                if (leaves[i] == label) {
                    idx = static_cast<int>(i);
                    break;
                }
            if (idx < 0) throw std::invalid_argument("node label '" + label + "' is not a leaf");
            mask |= LeafSet{1} << idx;
        }
        masks.push_back(mask);
    }
    return TreeStructure(leaves, masks);
}

}  // namespace nacest
