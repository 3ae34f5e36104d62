// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations. Everything here is deliberately the
// slow, literal version of a formula so that the optimized library paths
// can be checked against an independent route.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "nacest/kendall.hpp"
#include "nacest/random.hpp"
#include "nacest/sampler.hpp"
#include "nacest/tree.hpp"

// Absolute-tolerance check (doctest's Approx epsilon is relative).
#define CHECK_CLOSE(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace nacest::testing {

// Literal double-sum pseudo-observations, the reference the O(n log n)
// implementation must match exactly.
inline std::vector<double> naive_pair_pseudo_obs(std::span<const double> x,
                                                 std::span<const double> y) {
    const std::size_t n = x.size();
    std::vector<double> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        int count = 0;
        for (std::size_t l = 0; l < n; ++l) count += x[l] < x[m] && y[l] < y[m];
        w[m] = static_cast<double>(count) / static_cast<double>(n + 1);
    }
    return w;
}

// Quadratic-time Kendall tau (concordant minus discordant over all pairs).
inline double naive_kendall_tau(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    long long num = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = (x[i] - x[j]) * (y[i] - y[j]);
            num += s > 0 ? 1 : (s < 0 ? -1 : 0);
        }
    return static_cast<double>(num) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

// Integral of |K_a - K_b| over [0, 1] as an exact sum over the merged jump
// grid of the two step functions.
inline double merged_grid_cdf_distance(const KendallSample& a, const KendallSample& b) {
    std::vector<double> grid;
    grid.reserve(a.size() + b.size() + 2);
    grid.insert(grid.end(), a.sorted().begin(), a.sorted().end());
    grid.insert(grid.end(), b.sorted().begin(), b.sorted().end());
    grid.push_back(0.0);
    grid.push_back(1.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        acc += std::abs(a.ecdf(grid[i]) - b.ecdf(grid[i])) * (grid[i + 1] - grid[i]);
    }
    return acc;
}

// Kolmogorov distance between the ECDF of `values` and a continuous CDF.
template <typename Cdf>
double kolmogorov_distance(std::vector<double> values, Cdf&& cdf) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    }
    return d;
}

// Seedable random tree: recursive random partition of the leaf set with a
// uniform block count in {2, ..., |S|} at every branching node. Every
// rooted tree structure on d leaves has positive probability.
inline void random_partition_nodes(std::vector<int>& members, RandomSource& rng,
                                   std::vector<LeafSet>& nodes) {
    LeafSet mask = 0;
    for (int m : members) mask |= LeafSet{1} << m;
    nodes.push_back(mask);
    if (members.size() <= 1) return;
    const std::size_t size = members.size();
    const std::size_t blocks = 2 + rng.uniform_index(size - 1);  // uniform in {2..size}
    // Fisher-Yates, then seed one member per block and scatter the rest.
    for (std::size_t i = size; i > 1; --i) {
        std::swap(members[i - 1], members[rng.uniform_index(i)]);
    }
    std::vector<std::vector<int>> parts(blocks);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t b = i < blocks ? i : rng.uniform_index(blocks);
        parts[b].push_back(members[i]);
    }
    for (auto& part : parts) random_partition_nodes(part, rng, nodes);
}

inline TreeStructure random_tree(int d, RandomSource& rng) {
    std::vector<std::string> labels;
    for (int i = 0; i < d; ++i) labels.push_back("U" + std::to_string(i + 1));
    std::vector<int> members(d);
    for (int i = 0; i < d; ++i) members[i] = i;
    std::vector<LeafSet> nodes;
    random_partition_nodes(members, rng, nodes);
    return TreeStructure(labels, nodes);
}

// Uniformly random nonempty subset of `universe`.
inline LeafSet random_subset(LeafSet universe, RandomSource& rng) {
    LeafSet out = 0;
    do {
        out = universe & static_cast<LeafSet>(rng.next_u64());
    } while (out == 0);
    return out;
}

inline Matrix columns_to_matrix(const std::vector<std::vector<double>>& cols) {
    Matrix m(cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) m(r, c) = cols[c][r];
    return m;
}

}  // namespace nacest::testing
