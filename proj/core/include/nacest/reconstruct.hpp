// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nacest/random.hpp"
#include "nacest/sampler.hpp"
#include "nacest/tree.hpp"
#include "nacest/triad.hpp"

namespace nacest {

/// One trivariate structure: a fan or the structure whose inner node is
/// `inner` (two of the key's leaf indices).
struct TripleStructure {
    TripleKey key;
    bool fan = true;
    std::array<int, 2> inner{-1, -1};  // host leaf indices, ascending
};

/// The complete collection of (d choose 3) trivariate structures on d
/// leaves, ordered by key.
struct TripleSet {
    int leaf_count = 0;
    std::vector<TripleStructure> entries;
};

/// Builds a TripleSet from exact induced trivariate trees (tree::triples).
TripleSet triple_set_from_trees(int leaf_count, const std::map<TripleKey, TreeStructure>& trees);

/// Builds a TripleSet from test decisions: a triple whose p-value is below
/// `alpha` adopts its candidate structure, every other triple is a fan.
TripleSet triple_set_from_decisions(int leaf_count, const std::vector<TripleDecision>& decisions,
                                    double alpha);

/// For every leaf pair, the lowest common ancestors seen across the d-2
/// trivariate structures containing the pair: the pair itself when that
/// structure has it as inner node, the whole triple otherwise.
struct PairLcaTable {
    int leaf_count = 0;
    // lcas[p] for pair index p = i*(2d-i-1)/2-ish packing; use pair_index().
    std::vector<std::vector<LeafSet>> lcas;
};

int pair_index(int leaf_count, int i, int j);

PairLcaTable pair_lca_table(const TripleSet& ts);

/// Equivalence classes of pairs: two pairs are related when their lca
/// collections share an identical leaf set, closed transitively (disjoint
/// equivalent pairs are only ever linked through a bridging third pair).
/// Returns, per class, the list of pair indices.
std::vector<std::vector<int>> pair_classes(const PairLcaTable& table);

/// One branching node per class (the union of its pairs), plus the root and
/// all singletons, duplicates merged.
std::vector<LeafSet> assemble(int leaf_count, const std::vector<std::vector<int>>& classes);

/// Exact recovery: assemble and validate. Throws std::runtime_error with
/// the validation message when the set is faulty, which cannot happen for
/// the triples() of a genuine structure.
TreeStructure recover(const std::vector<std::string>& leaves, const TripleSet& ts);

struct FaultyCheck {
    bool faulty = false;
    std::string reason;  // validation message when faulty
};

/// Assembles the set and validates the result.
FaultyCheck detect_faulty(const TripleSet& ts);

/// Full structure estimate, with per-triple diagnostics.
struct EstimateResult {
    TreeStructure tree;
    double alpha0 = 0.0;
    double chosen_alpha = 0.0;
    std::vector<double> faulty_alphas;        // thresholds rejected on the way down
    std::vector<TripleDecision> decisions;    // ordered by triple key
};

/// Estimates the tree of an n x d sample (d >= 3, n >= 10): every triple is
/// tested once (p-values are cached across the sweep), then the threshold
/// is lowered through the observed p-values, alpha0 first and 0 last, until
/// the implied set of trivariate structures assembles into a valid tree.
/// The zero threshold turns every triple into a fan and always succeeds.
///
/// The (d choose 3) tests are independent and run on `n_threads` threads
/// with per-triple derived streams; results do not depend on thread count.
EstimateResult estimate_structure(const Matrix& data, const std::vector<std::string>& labels,
                                  double alpha0, int bootstrap_count, RandomSource& rng,
                                  int n_threads = 1);

}  // namespace nacest
