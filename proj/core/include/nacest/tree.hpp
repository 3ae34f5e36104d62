// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nacest {

/// Leaf subsets are bitmasks over leaf indices, which caps the supported
/// dimension at 64 variables. The estimation pipeline runs one test per
/// 3-subset, so larger problems are out of reach long before that limit.
using LeafSet = std::uint64_t;

constexpr int kMaxLeaves = 64;

int leafset_size(LeafSet s);
LeafSet full_leafset(int d);

/// Report produced by validate(). `ok` iff the node family is a rooted tree
/// structure: root present (i), all singletons present (ii), laminar (iii).
struct TreeValidation {
    bool ok = true;
    int clause = 0;           // 1, 2 or 3: the violated Definition clause
    LeafSet offender_a = 0;   // offending node(s), when applicable
    LeafSet offender_b = 0;
    std::string message;
};

TreeValidation validate_nodes(int leaf_count, const std::vector<LeafSet>& nodes);

/// Three distinct leaves of a host tree or dataset, stored as ascending
/// indices into the host's leaf-label vector.
struct TripleKey {
    std::array<int, 3> idx;

    friend bool operator==(const TripleKey&, const TripleKey&) = default;
    friend auto operator<=>(const TripleKey&, const TripleKey&) = default;
};

TripleKey make_triple_key(int a, int b, int c);

/// A rooted tree structure on a finite, ordered set of leaf labels: a
/// laminar family of leaf subsets containing the root and every singleton.
/// Nodes are identified by the set of leaves below them; internal labels
/// carry no meaning. Immutable after construction.
class TreeStructure {
public:
    /// Throws std::invalid_argument when the node family fails validation
    /// or labels are empty/duplicated.
    TreeStructure(std::vector<std::string> leaves, std::vector<LeafSet> nodes);

    int leaf_count() const { return static_cast<int>(leaves_.size()); }
    const std::vector<std::string>& leaves() const { return leaves_; }
    /// All nodes, sorted by (size, mask). Includes root and singletons.
    const std::vector<LeafSet>& nodes() const { return nodes_; }
    LeafSet root() const;
    bool has_node(LeafSet s) const;
    /// Nodes with at least two leaves below them.
    std::vector<LeafSet> branching_nodes() const;
    /// Children of a branching node, sorted by lowest leaf index.
    std::vector<LeafSet> children(LeafSet node) const;
    int leaf_index(const std::string& label) const;  // -1 when absent

    /// Structural equality: same leaf-label set and the same family of
    /// nodes viewed as label sets. Leaf ordering does not matter.
    bool same_structure(const TreeStructure& other) const;

private:
    std::vector<std::string> leaves_;
    std::vector<LeafSet> nodes_;
};

/// Lowest common ancestor of the leaves in `t`: the intersection of all
/// nodes containing `t`. Requires |t| >= 2 and t within the leaf set.
LeafSet lca(const TreeStructure& tree, LeafSet t);

/// The structure induced on a nonempty leaf subset: every node intersected
/// with `a`, empty results dropped, duplicates merged. Leaf labels are kept.
TreeStructure induce(const TreeStructure& tree, LeafSet a);

/// All (d choose 3) induced trivariate structures, keyed by leaf triple.
std::map<TripleKey, TreeStructure> triples(const TreeStructure& tree);

/// Canonical nested-parenthesis text form, children ordered by their lowest
/// leaf index: e.g. "((U1,U2),(U3,U4))". A single leaf prints as its label.
std::string format_tree(const TreeStructure& tree);

/// Inverse of format_tree. Accepts any well-formed nesting; leaf order is
/// the order of first appearance. Throws std::invalid_argument carrying the
/// character position on malformed input.
TreeStructure parse_tree(const std::string& text);

/// Convenience: build from label-set nodes (used by JSON and tests).
TreeStructure tree_from_label_nodes(const std::vector<std::string>& leaves,
                                    const std::vector<std::vector<std::string>>& nodes);

}  // namespace nacest
