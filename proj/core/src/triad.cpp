// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/triad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nacest/parallel.hpp"

namespace nacest {

namespace {

std::array<double, 3> distances_from_columns(const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const std::vector<double>& z) {
    const KendallSample k01 = pair_pseudo_obs(x, y);
    const KendallSample k02 = pair_pseudo_obs(x, z);
    const KendallSample k12 = pair_pseudo_obs(y, z);
    return {l1_distance(k01, k02), l1_distance(k01, k12), l1_distance(k02, k12)};
}

}  // namespace

std::array<double, 3> triple_distances(const Matrix& sample3) {
    if (sample3.cols() != 3) throw std::invalid_argument("triple_distances: expected 3 columns");
    if (sample3.rows() < 2) throw std::invalid_argument("triple_distances: need at least two rows");
    return distances_from_columns(sample3.column(0), sample3.column(1), sample3.column(2));
}

double test_statistic(const std::array<double, 3>& deltas) {
    const int m = static_cast<int>(std::min_element(deltas.begin(), deltas.end()) - deltas.begin());
    const double rest = deltas[(m + 1) % 3] + deltas[(m + 2) % 3];
    return std::abs(deltas[m] - 0.5 * rest);
}

TripleCandidate candidate_structure(const std::array<double, 3>& deltas) {
    TripleCandidate c;
    const int m = static_cast<int>(std::min_element(deltas.begin(), deltas.end()) - deltas.begin());
    int ties = 0;
    for (double d : deltas) ties += d == deltas[m];
    if (ties > 1) {
        c.fan = true;
        c.tie = true;
        return c;
    }
    c.fan = false;
    c.inner = {(m + 1) % 3, (m + 2) % 3};
    std::sort(c.inner.begin(), c.inner.end());
    return c;
}

RadialFit::RadialFit(std::vector<double> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("RadialFit: no atoms");
    if (!std::is_sorted(atoms_.begin(), atoms_.end()) || atoms_.front() <= 0.0) {
        throw std::invalid_argument("RadialFit: atoms must be positive and ascending");
    }
    const std::size_t n = atoms_.size();
    suffix_inv_.assign(n + 1, 0.0);
    suffix_inv2_.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        const double inv = 1.0 / atoms_[i];
        suffix_inv_[i] = suffix_inv_[i + 1] + inv;
        suffix_inv2_[i] = suffix_inv2_[i + 1] + inv * inv;
    }
}

double RadialFit::psi(double x) const {
    if (x < 0.0) throw std::domain_error("RadialFit::psi: x must be nonnegative");
    if (x == 0.0) return 1.0;
    // Atoms <= x contribute nothing; the rest reduce to suffix sums.
    const std::size_t i = static_cast<std::size_t>(
        std::upper_bound(atoms_.begin(), atoms_.end(), x) - atoms_.begin());
    const std::size_t n = atoms_.size();
    const double cnt = static_cast<double>(n - i);
    const double value = cnt - 2.0 * x * suffix_inv_[i] + x * x * suffix_inv2_[i];
    return std::max(0.0, value / static_cast<double>(n));
}

double RadialFit::psi_derivative(double x) const {
    if (x < 0.0) throw std::domain_error("RadialFit::psi_derivative: x must be nonnegative");
    const std::size_t i = static_cast<std::size_t>(
        std::upper_bound(atoms_.begin(), atoms_.end(), x) - atoms_.begin());
    return -2.0 * (suffix_inv_[i] - x * suffix_inv2_[i]) / static_cast<double>(atoms_.size());
}

double RadialFit::psi_inverse(double w) const {
    if (!(w > 0.0) || w > 1.0) throw std::domain_error("RadialFit::psi_inverse: w must lie in (0, 1]");
    if (w == 1.0) return 0.0;
    double lo = 0.0, hi = atoms_.back();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (psi(mid) > w) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double RadialFit::implied_bivariate_kendall_cdf(double w) const {
    if (!(w > 0.0) || !(w < 1.0))
        throw std::domain_error("implied_bivariate_kendall_cdf: w must lie in (0, 1)");
    const double x = psi_inverse(w);
    const double slope = psi_derivative(x);
    if (slope == 0.0) return 1.0;
    return std::min(1.0, w - x * slope);
}

RadialFit fit_radial(const Matrix& sample3) {
    if (sample3.cols() != 3) throw std::invalid_argument("fit_radial: expected 3 columns");
    const std::size_t n = sample3.rows();
    if (n < 10) throw std::invalid_argument("fit_radial: need at least 10 rows");

    const KendallSample ks =
        triple_pseudo_obs(sample3.column(0), sample3.column(1), sample3.column(2));
    const std::vector<double>& targets = ks.sorted();  // ascending

    // Solve psi(r_(i)) = targets[n-1-i] from the largest atom down. With
    // S0/S1/S2 accumulated over the atoms already placed, each step is the
    // decreasing branch of a quadratic. The top atom only sets the overall
    // scale (generators are scale-free); anchor it at the independence
    // generator's value for the smallest positive target level.
    std::vector<double> atoms(n);
    atoms[n - 1] = -std::log(0.5 / static_cast<double>(n + 1));
    double s0 = 1.0, s1 = 1.0 / atoms[n - 1], s2 = s1 * s1;
    for (std::size_t i = n - 1; i-- > 0;) {
        const double t = targets[n - 1 - i];
        const double c = s0 - static_cast<double>(n) * t;
        if (c < 0.0) {
            throw std::runtime_error(
                "fit_radial: infeasible Kendall level " + std::to_string(t) +
                " (residual " + std::to_string(-c / static_cast<double>(n)) + ")");
        }
        const double disc = std::max(0.0, s1 * s1 - s2 * c);
        double r = (s1 - std::sqrt(disc)) / s2;
        r = std::min(r, atoms[i + 1]);
        if (!(r > 0.0)) {
            throw std::runtime_error("fit_radial: degenerate atom at level " + std::to_string(t));
        }
        atoms[i] = r;
        const double inv = 1.0 / r;
        s0 += 1.0;
        s1 += inv;
        s2 += inv * inv;
    }

    RadialFit fit(std::move(atoms));
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        residual = std::max(residual, std::abs(fit.psi(fit.atoms()[i]) - targets[n - 1 - i]));
    }
    fit.residual_ = residual;
    if (residual > 1e-8) {
        throw std::runtime_error("fit_radial: self-consistency residual " +
                                 std::to_string(residual) + " exceeds 1e-8");
    }
    return fit;
}

Matrix h0_resample(const RadialFit& fit, std::size_t n, RandomSource& rng) {
    Matrix out(n, 3);
    const auto& atoms = fit.atoms();
    for (std::size_t r = 0; r < n; ++r) {
        const double radius = atoms[rng.uniform_index(atoms.size())];
        double e[3];
        double total = 0.0;
        for (double& v : e) {
            v = rng.exponential();
            total += v;
        }
        for (int c = 0; c < 3; ++c) out(r, c) = fit.psi(radius * e[c] / total);
    }
    return out;
}

TripleDecision triple_test(const Matrix& sample3, int bootstrap_count, RandomSource& rng,
                           int n_threads, TripleKey key) {
    if (bootstrap_count < 1) throw std::invalid_argument("triple_test: bootstrap count must be >= 1");
    const std::size_t n = sample3.rows();

    TripleDecision d;
    d.triple = key;
    d.deltas = triple_distances(sample3);
    d.statistic = test_statistic(d.deltas);
    d.candidate = candidate_structure(d.deltas);

    const RadialFit fit = fit_radial(sample3);

    d.bootstrap_statistics.assign(static_cast<std::size_t>(bootstrap_count), 0.0);
    const std::vector<RandomSource> streams =
        rng.derive_streams(static_cast<std::size_t>(bootstrap_count));
    parallel_for(static_cast<std::size_t>(bootstrap_count), n_threads, [&](std::size_t b) {
        RandomSource local = streams[b];
        const Matrix resample = h0_resample(fit, n, local);
        d.bootstrap_statistics[b] = test_statistic(triple_distances(resample));
    });

    std::size_t at_least = 0;
    for (double t : d.bootstrap_statistics) at_least += t >= d.statistic;
    d.p_value = static_cast<double>(at_least) / static_cast<double>(bootstrap_count);
    return d;
}

}  // namespace nacest
