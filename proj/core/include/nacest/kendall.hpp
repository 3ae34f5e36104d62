// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace nacest {

/// Rank-based pseudo-observations of a Kendall distribution, with a sorted
/// copy cached for distance computations. Values live in [0, n/(n+1)] and
/// the multiset is invariant under any strictly increasing transform of the
/// input columns.
class KendallSample {
public:
    explicit KendallSample(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }  // row order
    const std::vector<double>& sorted() const { return sorted_; }

    /// Right-continuous empirical CDF K_n(w) = (1/n) #(w_m <= w).
    double ecdf(double w) const;

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

/// Pseudo-observations of a pair of columns:
///   w_m = (1/(n+1)) * #{ l : x_l < x_m and y_l < y_m },
/// strict inequalities throughout. O(n log n) via a Fenwick tree over the
/// ranks of y; exact double-sum semantics, ties included.
KendallSample pair_pseudo_obs(std::span<const double> x, std::span<const double> y);

/// Trivariate analogue with three strict inequalities. O(n^2); it runs once
/// per test rather than once per bootstrap replicate, so the literal double
/// sum is fine.
KendallSample triple_pseudo_obs(std::span<const double> x, std::span<const double> y,
                                std::span<const double> z);

/// L1 distance between two empirical Kendall CDFs on samples of equal size:
///   (1/n) * sum_m |a_(m) - b_(m)|,
/// which equals the integral of |K_a - K_b| over [0, 1] exactly.
double l1_distance(const KendallSample& a, const KendallSample& b);

/// Sample version of Kendall's tau (concordance minus discordance over all
/// pairs; ties counted as neither). O(n log n) via merge-sort inversions.
double empirical_kendall_tau(std::span<const double> x, std::span<const double> y);

}  // namespace nacest
