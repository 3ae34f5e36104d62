// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nacest/tree.hpp"
#include "oracles.hpp"

using namespace nacest;
using nacest::testing::random_subset;
using nacest::testing::random_tree;

namespace {

LeafSet mask_of(const TreeStructure& tree, const std::vector<std::string>& labels) {
    LeafSet m = 0;
    for (const auto& l : labels) {
        const int idx = tree.leaf_index(l);
        REQUIRE(idx >= 0);
        m |= LeafSet{1} << idx;
    }
    return m;
}

std::set<std::string> labels_of(const TreeStructure& tree, LeafSet mask) {
    std::set<std::string> out;
    for (int i = 0; i < tree.leaf_count(); ++i)
        if (mask >> i & 1) out.insert(tree.leaves()[i]);
    return out;
}

std::vector<std::string> label_list(const TreeStructure& tree, LeafSet mask) {
    std::vector<std::string> out;
    for (int i = 0; i < tree.leaf_count(); ++i)
        if (mask >> i & 1) out.push_back(tree.leaves()[i]);
    return out;
}

// lca inside the subtree induced on c, reported as a label set.
std::set<std::string> lca_labels_in_induced(const TreeStructure& tree, LeafSet c, LeafSet t) {
    const TreeStructure sub = induce(tree, c);
    return labels_of(sub, lca(sub, mask_of(sub, label_list(tree, t))));
}

const char* kSevenVariateText = "((U1,(U2,U3)),(U4,(U5,(U6,U7))))";

}  // namespace

TEST_CASE("validate accepts the nested trivariate structure") {
    const std::vector<LeafSet> nodes = {0b111, 0b110, 0b001, 0b010, 0b100};
    CHECK(validate_nodes(3, nodes).ok);
}

TEST_CASE("validate reports laminarity violations with the offending pair") {
    const std::vector<LeafSet> nodes = {0b111, 0b011, 0b110, 0b001, 0b010, 0b100};
    const TreeValidation v = validate_nodes(3, nodes);
    CHECK_FALSE(v.ok);
    CHECK(v.clause == 3);
    CHECK(((v.offender_a == 0b011 && v.offender_b == 0b110) ||
           (v.offender_a == 0b110 && v.offender_b == 0b011)));
}

TEST_CASE("validate reports a missing root or singleton") {
    CHECK(validate_nodes(3, {0b011, 0b001, 0b010, 0b100}).clause == 1);
    CHECK(validate_nodes(3, {0b111, 0b001, 0b010}).clause == 2);
}

TEST_CASE("lca on the nested trivariate structure") {
    const TreeStructure tree = parse_tree("(U1,(U2,U3))");
    CHECK(lca(tree, mask_of(tree, {"U2", "U3"})) == mask_of(tree, {"U2", "U3"}));
    CHECK(lca(tree, mask_of(tree, {"U1", "U2"})) == tree.root());
    CHECK(lca(tree, mask_of(tree, {"U1", "U3"})) == tree.root());
    CHECK_THROWS_AS(lca(tree, LeafSet{1}), std::invalid_argument);
    CHECK_THROWS_AS(lca(tree, LeafSet{0b1001}), std::invalid_argument);
}

TEST_CASE("lca of a branching node is the node itself") {
    RandomSource rng(71);
    for (int rep = 0; rep < 50; ++rep) {
        const TreeStructure tree = random_tree(3 + static_cast<int>(rng.uniform_index(6)), rng);
        for (LeafSet node : tree.branching_nodes()) CHECK(lca(tree, node) == node);
    }
}

TEST_CASE("induce keeps the right branch of the seven-variate structure") {
    const TreeStructure tree = parse_tree(kSevenVariateText);
    const TreeStructure branch = induce(tree, mask_of(tree, {"U4", "U5", "U6", "U7"}));
    CHECK(branch.same_structure(parse_tree("(U4,(U5,(U6,U7)))")));

    CHECK(induce(tree, tree.root()).same_structure(tree));
    const TreeStructure pair = induce(tree, mask_of(tree, {"U6", "U7"}));
    CHECK(pair.same_structure(parse_tree("(U6,U7)")));
    CHECK_THROWS_AS(induce(tree, LeafSet{0}), std::invalid_argument);
}

TEST_CASE("triples of the four-variate two-pair structure") {
    const TreeStructure tree = parse_tree("((U1,U2),(U3,U4))");
    const auto trees = triples(tree);
    REQUIRE(trees.size() == 4);
    CHECK(trees.at(make_triple_key(0, 1, 2)).same_structure(parse_tree("((U1,U2),U3)")));
    CHECK(trees.at(make_triple_key(0, 1, 3)).same_structure(parse_tree("((U1,U2),U4)")));
    CHECK(trees.at(make_triple_key(0, 2, 3)).same_structure(parse_tree("(U1,(U3,U4))")));
    CHECK(trees.at(make_triple_key(1, 2, 3)).same_structure(parse_tree("(U2,(U3,U4))")));
}

TEST_CASE("triples of a fan are all fans") {
    const TreeStructure fan = parse_tree("(U1,U2,U3,U4,U5)");
    for (const auto& [key, tree] : triples(fan)) {
        CHECK(tree.nodes().size() == 4);  // root plus singletons only
    }
}

TEST_CASE("seven-variate triple {U5,U6,U7} keeps the inner pair {U6,U7}") {
    const TreeStructure tree = parse_tree(kSevenVariateText);
    const auto trees = triples(tree);
    const TreeStructure& t = trees.at(make_triple_key(4, 5, 6));
    CHECK(t.same_structure(parse_tree("(U5,(U6,U7))")));
}

TEST_CASE("format produces the canonical text forms") {
    CHECK(format_tree(parse_tree("(U1,(U2,U3))")) == "(U1,(U2,U3))");
    CHECK(format_tree(parse_tree("(U1,U2,U3)")) == "(U1,U2,U3)");
    // Children are ordered by their lowest leaf index.
    const TreeStructure tree =
        tree_from_label_nodes({"U1", "U2", "U3", "U4"},
                              {{"U1", "U2", "U3", "U4"}, {"U3", "U4"}, {"U1", "U2"},
                               {"U1"}, {"U2"}, {"U3"}, {"U4"}});
    CHECK(format_tree(tree) == "((U1,U2),(U3,U4))");
}

TEST_CASE("parse recovers the four-variate structure") {
    const TreeStructure tree = parse_tree("((U1,U2),(U3,U4))");
    CHECK(tree.leaf_count() == 4);
    CHECK(tree.has_node(mask_of(tree, {"U1", "U2"})));
    CHECK(tree.has_node(mask_of(tree, {"U3", "U4"})));
    CHECK(tree.nodes().size() == 7);
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_WITH_AS(parse_tree("(U1,U2"), doctest::Contains("position"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_tree("(U1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tree("(U1,U1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tree("(U1,U2))"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tree(""), std::invalid_argument);
}

TEST_CASE("parse is a left inverse of format on random trees") {
    RandomSource rng(12345);
    for (int rep = 0; rep < 200; ++rep) {
        const TreeStructure tree = random_tree(2 + static_cast<int>(rng.uniform_index(9)), rng);
        const std::string text = format_tree(tree);
        const TreeStructure back = parse_tree(text);
        CHECK(back.same_structure(tree));
        CHECK(format_tree(back) == text);
    }
}

TEST_CASE("lca equivalence transfers to induced subtrees and back") {
    // For T1, T2 inside C: equal lcas in the tree iff equal lcas in the
    // subtree induced on C (compared as label sets).
    RandomSource rng(99);
    int checked = 0;
    for (int rep = 0; rep < 150; ++rep) {
        const int d = 4 + static_cast<int>(rng.uniform_index(4));
        const TreeStructure tree = random_tree(d, rng);
        for (int it = 0; it < 60; ++it) {
            const LeafSet c = random_subset(tree.root(), rng);
            if (leafset_size(c) < 2) continue;
            LeafSet t1 = random_subset(c, rng);
            LeafSet t2 = random_subset(c, rng);
            if (leafset_size(t1) < 2 || leafset_size(t2) < 2) continue;
            const bool equal_full = lca(tree, t1) == lca(tree, t2);
            const bool equal_sub =
                lca_labels_in_induced(tree, c, t1) == lca_labels_in_induced(tree, c, t2);
            CHECK(equal_full == equal_sub);
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("lca of an induced tree is the full lca cut to the subset") {
    RandomSource rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const int d = 3 + static_cast<int>(rng.uniform_index(5));
        const TreeStructure tree = random_tree(d, rng);
        const LeafSet c = random_subset(tree.root(), rng);
        if (leafset_size(c) < 2) continue;
        for (int it = 0; it < 20; ++it) {
            const LeafSet a = random_subset(c, rng);
            if (leafset_size(a) < 2) continue;
            const auto via_sub = lca_labels_in_induced(tree, c, a);
            const auto via_full = labels_of(tree, lca(tree, a) & c);
            CHECK(via_sub == via_full);
        }
    }
}

TEST_CASE("a node is the lca of B iff B meets two of its children") {
    RandomSource rng(13);
    for (int rep = 0; rep < 120; ++rep) {
        const int d = 3 + static_cast<int>(rng.uniform_index(5));  // up to 7
        const TreeStructure tree = random_tree(d, rng);
        for (LeafSet node : tree.branching_nodes()) {
            const std::vector<LeafSet> kids = tree.children(node);
            for (LeafSet b = 1; b <= tree.root(); ++b) {
                if (leafset_size(b) < 2 || (b & tree.root()) != b) continue;
                const bool is_lca = lca(tree, b) == node;
                int touched = 0;
                for (LeafSet kid : kids) touched += (kid & b) != 0;
                const bool characterized = (b & node) == b && touched >= 2;
                CHECK(is_lca == characterized);
            }
        }
    }
}

TEST_CASE("every branching node is the union of the pairs below it") {
    RandomSource rng(29);
    for (int rep = 0; rep < 150; ++rep) {
        const int d = 2 + static_cast<int>(rng.uniform_index(7));  // up to 8
        const TreeStructure tree = random_tree(d, rng);
        for (LeafSet node : tree.branching_nodes()) {
            LeafSet acc = 0;
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    const LeafSet pair = (LeafSet{1} << i) | (LeafSet{1} << j);
                    if ((pair & tree.root()) == pair && lca(tree, pair) == node) acc |= pair;
                }
            CHECK(acc == node);
        }
    }
}

TEST_CASE("restriction composes") {
    RandomSource rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const int d = 3 + static_cast<int>(rng.uniform_index(5));
        const TreeStructure tree = random_tree(d, rng);
        const LeafSet c = random_subset(tree.root(), rng);
        const LeafSet a_in_c = random_subset(c, rng);
        const TreeStructure via_c = induce(tree, c);
        const TreeStructure lhs = induce(via_c, mask_of(via_c, label_list(tree, a_in_c)));
        const TreeStructure rhs = induce(tree, a_in_c);
        CHECK(lhs.same_structure(rhs));
    }
}

TEST_CASE("trees reject more than 64 leaves and bad labels") {
    std::vector<std::string> labels;
    for (int i = 0; i < 65; ++i) labels.push_back("V" + std::to_string(i));
    CHECK_THROWS_AS(TreeStructure(labels, {}), std::invalid_argument);
    CHECK_THROWS_AS(TreeStructure({"a", "a"}, {0b11, 0b01, 0b10}), std::invalid_argument);
    CHECK_THROWS_AS(TreeStructure({"a", "b,c"}, {0b11, 0b01, 0b10}), std::invalid_argument);
}
