// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/kendall.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace nacest {

namespace {

// Fenwick tree over 1-based ranks.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t i) {
        for (; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
    }

    // Sum of counts at ranks 1..i.
    std::int64_t prefix(std::size_t i) const {
        std::int64_t s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::int64_t> tree_;
};

std::vector<std::size_t> dense_ranks(std::span<const double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ranks[i] = static_cast<std::size_t>(
                       std::lower_bound(sorted.begin(), sorted.end(), v[i]) - sorted.begin()) +
                   1;
    }
    return ranks;
}

// Counts strict inversions (v[i] > v[j], i < j) by merge sort.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (v[b] < v[a]) {
            inv += static_cast<std::int64_t>(mid - a);
            buf[out++] = v[b++];
        } else {
            buf[out++] = v[a++];
        }
    }
    while (a < mid) buf[out++] = v[a++];
    while (b < hi) buf[out++] = v[b++];
    std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
    return inv;
}

}  // namespace

KendallSample::KendallSample(std::vector<double> values)
    : values_(std::move(values)), sorted_(values_) {
    std::sort(sorted_.begin(), sorted_.end());
}

double KendallSample::ecdf(double w) const {
    if (sorted_.empty()) return 0.0;
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), w);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

KendallSample pair_pseudo_obs(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pair_pseudo_obs: column length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("pair_pseudo_obs: need at least two rows");

    const std::vector<std::size_t> yr = dense_ranks(y);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    // Rows are inserted in increasing x; rows with equal x are queried before
    // any of them is inserted, so x ties never count.
    Fenwick counts(n);
    std::vector<double> w(n);
    const double denom = static_cast<double>(n + 1);
    std::size_t g = 0;
    while (g < n) {
        std::size_t h = g;
        while (h < n && x[order[h]] == x[order[g]]) ++h;
        for (std::size_t k = g; k < h; ++k) {
            const std::size_t m = order[k];
            w[m] = static_cast<double>(counts.prefix(yr[m] - 1)) / denom;
        }
        for (std::size_t k = g; k < h; ++k) counts.add(yr[order[k]]);
        g = h;
    }
    return KendallSample(std::move(w));
}

KendallSample triple_pseudo_obs(std::span<const double> x, std::span<const double> y,
                                std::span<const double> z) {
    if (x.size() != y.size() || x.size() != z.size())
        throw std::invalid_argument("triple_pseudo_obs: column length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("triple_pseudo_obs: need at least two rows");
    std::vector<double> w(n);
    const double denom = static_cast<double>(n + 1);
    for (std::size_t m = 0; m < n; ++m) {
        std::int64_t count = 0;
        for (std::size_t l = 0; l < n; ++l) {
            count += (x[l] < x[m]) & (y[l] < y[m]) & (z[l] < z[m]);
        }
        w[m] = static_cast<double>(count) / denom;
    }
    return KendallSample(std::move(w));
}

double l1_distance(const KendallSample& a, const KendallSample& b) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_distance: sample size mismatch");
    if (a.size() == 0) return 0.0;
    const auto& sa = a.sorted();
    const auto& sb = b.sorted();
    double acc = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) acc += std::abs(sa[i] - sb[i]);
    return acc / static_cast<double>(sa.size());
}

double empirical_kendall_tau(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("empirical_kendall_tau: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("empirical_kendall_tau: need at least two rows");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
    });

    auto tie_pairs = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::int64_t t = 0;
        std::size_t g = 0;
        while (g < v.size()) {
            std::size_t h = g;
            while (h < v.size() && v[h] == v[g]) ++h;
            const std::int64_t c = static_cast<std::int64_t>(h - g);
            t += c * (c - 1) / 2;
            g = h;
        }
        return t;
    };

    std::int64_t tie_x = 0, tie_xy = 0;
    {
        std::size_t g = 0;
        while (g < n) {
            std::size_t h = g;
            while (h < n && x[order[h]] == x[order[g]]) ++h;
            const std::int64_t c = static_cast<std::int64_t>(h - g);
            tie_x += c * (c - 1) / 2;
            std::size_t gg = g;
            while (gg < h) {
                std::size_t hh = gg;
                while (hh < h && y[order[hh]] == y[order[gg]]) ++hh;
                const std::int64_t cc = static_cast<std::int64_t>(hh - gg);
                tie_xy += cc * (cc - 1) / 2;
                gg = hh;
            }
            g = h;
        }
    }
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
    const std::int64_t tie_y = tie_pairs(ys);

    std::vector<double> buf(n);
    const std::int64_t discordant = count_inversions(ys, buf, 0, n);
    const std::int64_t total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    const std::int64_t concordant = total - tie_x - tie_y + tie_xy - discordant;
    return static_cast<double>(concordant - discordant) / static_cast<double>(total);
}

}  // namespace nacest
