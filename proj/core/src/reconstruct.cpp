// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/reconstruct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "nacest/parallel.hpp"

namespace nacest {

namespace {

// Disjoint-set forest over pair indices.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

void require_complete(const TripleSet& ts) {
    const int d = ts.leaf_count;
    const std::size_t expected =
        static_cast<std::size_t>(d) * (d - 1) * (d - 2) / 6;
    if (d < 3 || ts.entries.size() != expected) {
        throw std::invalid_argument("triple set is incomplete: expected " +
                                    std::to_string(expected) + " entries");
    }
}

}  // namespace

int pair_index(int leaf_count, int i, int j) {
    if (i > j) std::swap(i, j);
    // Row-major upper triangle: pairs (0,1), (0,2), ..., (d-2,d-1).
    return i * leaf_count - i * (i + 1) / 2 + (j - i - 1);
}

TripleSet triple_set_from_trees(int leaf_count, const std::map<TripleKey, TreeStructure>& trees) {
    TripleSet ts;
    ts.leaf_count = leaf_count;
    ts.entries.reserve(trees.size());
    for (const auto& [key, tree] : trees) {
        if (tree.leaf_count() != 3) throw std::invalid_argument("triple set entries must have 3 leaves");
        TripleStructure s;
        s.key = key;
        // The four admissible shapes differ only by which pair, if any, is a
        // node of the induced tree. Induced trees keep the host leaf order,
        // so local position p corresponds to host index key.idx[p].
        for (LeafSet node : tree.nodes()) {
            if (leafset_size(node) != 2) continue;
            std::array<int, 2> local{-1, -1};
            int k = 0;
            for (int bit = 0; bit < 3; ++bit)
                if (node >> bit & 1) local[k++] = bit;
            s.fan = false;
            s.inner = {key.idx[local[0]], key.idx[local[1]]};
            break;
        }
        ts.entries.push_back(s);
    }
    std::sort(ts.entries.begin(), ts.entries.end(),
              [](const TripleStructure& a, const TripleStructure& b) { return a.key < b.key; });
    return ts;
}

TripleSet triple_set_from_decisions(int leaf_count, const std::vector<TripleDecision>& decisions,
                                    double alpha) {
    TripleSet ts;
    ts.leaf_count = leaf_count;
    ts.entries.reserve(decisions.size());
    for (const TripleDecision& d : decisions) {
        TripleStructure s;
        s.key = d.triple;
        if (d.p_value < alpha && !d.candidate.fan) {
            s.fan = false;
            s.inner = {d.triple.idx[d.candidate.inner[0]], d.triple.idx[d.candidate.inner[1]]};
        }
        ts.entries.push_back(s);
    }
    std::sort(ts.entries.begin(), ts.entries.end(),
              [](const TripleStructure& a, const TripleStructure& b) { return a.key < b.key; });
    return ts;
}

PairLcaTable pair_lca_table(const TripleSet& ts) {
    require_complete(ts);
    const int d = ts.leaf_count;
    PairLcaTable table;
    table.leaf_count = d;
    table.lcas.assign(static_cast<std::size_t>(d) * (d - 1) / 2, {});
    for (const TripleStructure& s : ts.entries) {
        const LeafSet triple_mask = (LeafSet{1} << s.key.idx[0]) | (LeafSet{1} << s.key.idx[1]) |
                                    (LeafSet{1} << s.key.idx[2]);
        const LeafSet inner_mask =
            s.fan ? 0 : (LeafSet{1} << s.inner[0]) | (LeafSet{1} << s.inner[1]);
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                const int i = s.key.idx[a], j = s.key.idx[b];
                const LeafSet pair_mask = (LeafSet{1} << i) | (LeafSet{1} << j);
                const LeafSet entry = (!s.fan && pair_mask == inner_mask) ? pair_mask : triple_mask;
                table.lcas[pair_index(d, i, j)].push_back(entry);
            }
        }
    }
    return table;
}

std::vector<std::vector<int>> pair_classes(const PairLcaTable& table) {
    const int d = table.leaf_count;
    const int n_pairs = d * (d - 1) / 2;
    UnionFind uf(n_pairs);
    // Pairs sharing an identical lca leaf set are related; close transitively.
    std::unordered_map<LeafSet, int> first_seen;
    for (int p = 0; p < n_pairs; ++p) {
        for (LeafSet entry : table.lcas[p]) {
            const auto [it, inserted] = first_seen.emplace(entry, p);
            if (!inserted) uf.unite(p, it->second);
        }
    }
    std::unordered_map<int, std::vector<int>> grouped;
    for (int p = 0; p < n_pairs; ++p) grouped[uf.find(p)].push_back(p);
    std::vector<std::vector<int>> classes;
    classes.reserve(grouped.size());
    for (auto& [root, members] : grouped) classes.push_back(std::move(members));
    std::sort(classes.begin(), classes.end());
    return classes;
}

std::vector<LeafSet> assemble(int leaf_count, const std::vector<std::vector<int>>& classes) {
    // Recover (i, j) from the packed pair index.
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(leaf_count) * (leaf_count - 1) / 2);
    for (int i = 0; i < leaf_count; ++i)
        for (int j = i + 1; j < leaf_count; ++j) pairs.emplace_back(i, j);

    std::vector<LeafSet> nodes;
    for (const auto& cls : classes) {
        LeafSet u = 0;
        for (int p : cls) {
            u |= LeafSet{1} << pairs[p].first;
            u |= LeafSet{1} << pairs[p].second;
        }
        nodes.push_back(u);
    }
    nodes.push_back(full_leafset(leaf_count));
    for (int i = 0; i < leaf_count; ++i) nodes.push_back(LeafSet{1} << i);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

TreeStructure recover(const std::vector<std::string>& leaves, const TripleSet& ts) {
    if (static_cast<int>(leaves.size()) != ts.leaf_count) {
        throw std::invalid_argument("recover: label count does not match the triple set");
    }
    const std::vector<LeafSet> nodes = assemble(ts.leaf_count, pair_classes(pair_lca_table(ts)));
    const TreeValidation v = validate_nodes(ts.leaf_count, nodes);
    if (!v.ok) throw std::runtime_error("faulty set of trivariate structures: " + v.message);
    return TreeStructure(leaves, nodes);
}

FaultyCheck detect_faulty(const TripleSet& ts) {
    const std::vector<LeafSet> nodes = assemble(ts.leaf_count, pair_classes(pair_lca_table(ts)));
    const TreeValidation v = validate_nodes(ts.leaf_count, nodes);
    return FaultyCheck{!v.ok, v.ok ? std::string() : v.message};
}

EstimateResult estimate_structure(const Matrix& data, const std::vector<std::string>& labels,
                                  double alpha0, int bootstrap_count, RandomSource& rng,
                                  int n_threads) {
    const int d = static_cast<int>(data.cols());
    if (d < 3) throw std::invalid_argument("estimate_structure: need at least three columns");
    if (data.rows() < 10) throw std::invalid_argument("estimate_structure: need at least 10 rows");
    if (static_cast<int>(labels.size()) != d)
        throw std::invalid_argument("estimate_structure: label count mismatch");
    if (!(alpha0 >= 0.0) || alpha0 > 1.0)
        throw std::invalid_argument("estimate_structure: alpha must lie in [0, 1]");

    // All triple keys, ordered.
    std::vector<TripleKey> keys;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) keys.push_back(TripleKey{{i, j, k}});

    std::vector<TripleDecision> decisions(keys.size());
    const std::vector<RandomSource> streams = rng.derive_streams(keys.size());
    const std::size_t n = data.rows();
    parallel_for(keys.size(), n_threads, [&](std::size_t t) {
        Matrix sub(n, 3);
        for (std::size_t r = 0; r < n; ++r)
            for (int c = 0; c < 3; ++c)
                sub(r, c) = data(r, static_cast<std::size_t>(keys[t].idx[c]));
        RandomSource local = streams[t];
        decisions[t] = triple_test(sub, bootstrap_count, local, 1, keys[t]);
    });

    // Candidate thresholds: alpha0, then every distinct p-value below it in
    // descending order, then 0. Between observed p-values the implied set of
    // structures is constant, so the sweep is exhaustive.
    std::vector<double> thresholds{alpha0};
    {
        std::vector<double> ps;
        for (const auto& dec : decisions)
            if (dec.p_value < alpha0) ps.push_back(dec.p_value);
        std::sort(ps.rbegin(), ps.rend());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        thresholds.insert(thresholds.end(), ps.begin(), ps.end());
        thresholds.push_back(0.0);
    }

    EstimateResult result{TreeStructure(labels, [&] {
                              std::vector<LeafSet> fan{full_leafset(d)};
                              for (int i = 0; i < d; ++i) fan.push_back(LeafSet{1} << i);
                              return fan;
                          }()),
                          alpha0,
                          0.0,
                          {},
                          {}};
    for (double alpha : thresholds) {
        const TripleSet ts = triple_set_from_decisions(d, decisions, alpha);
        const FaultyCheck check = detect_faulty(ts);
        if (!check.faulty) {
            result.tree = recover(labels, ts);
            result.chosen_alpha = alpha;
            break;
        }
        result.faulty_alphas.push_back(alpha);
    }
    result.decisions = std::move(decisions);
    return result;
}

}  // namespace nacest
