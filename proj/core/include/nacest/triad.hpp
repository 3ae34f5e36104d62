// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nacest/kendall.hpp"
#include "nacest/random.hpp"
#include "nacest/sampler.hpp"
#include "nacest/tree.hpp"

namespace nacest {

/// Candidate structure for a triple of variables: either the trivial
/// three-leaf structure (fan) or the structure whose inner node joins the
/// two positions in `inner`.
struct TripleCandidate {
    bool fan = true;
    std::array<int, 2> inner{-1, -1};  // positions 0..2 within the triple
    bool tie = false;
};

/// Outcome of the trivariate structure test.
struct TripleDecision {
    TripleKey triple{{0, 1, 2}};   // leaf indices in the host dataset
    std::array<double, 3> deltas;  // deltas[m]: distance between the two pairs sharing position m
    double statistic = 0.0;
    double p_value = 1.0;
    TripleCandidate candidate;
    std::vector<double> bootstrap_statistics;  // in replicate order
};

/// Distances between the three empirical Kendall CDFs of an n x 3 sample:
/// deltas[0] compares pairs (0,1) and (0,2), deltas[1] pairs (0,1) and
/// (1,2), deltas[2] pairs (0,2) and (1,2).
std::array<double, 3> triple_distances(const Matrix& sample3);

/// |min delta - mean of the two others|.
double test_statistic(const std::array<double, 3>& deltas);

/// The structure suggested by the minimal distance: when the pair sharing
/// position m is closest, the other two positions form the inner node. An
/// exact tie between the minima yields a fan candidate with the tie flag
/// set; near ties are left to the bootstrap.
TripleCandidate candidate_structure(const std::array<double, 3>& deltas);

/// Nonparametric trivariate Archimedean fit: a discrete radial law whose
/// Williamson 3-transform
///   psi_n(x) = (1/n) sum_m (1 - x / r_m)_+^2
/// reproduces the ordered trivariate Kendall pseudo-observations exactly,
/// psi_n(r_(m)) = w_(n+1-m). The atoms are solved in closed form from the
/// top down (the top atom fixes the scale, which is not identifiable).
class RadialFit {
public:
    /// Builds the fit from ascending atoms. Prefer fit_radial().
    explicit RadialFit(std::vector<double> atoms);

    const std::vector<double>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    /// Sup-norm self-consistency residual reported by fit_radial.
    double residual() const { return residual_; }

    double psi(double x) const;
    double psi_derivative(double x) const;
    /// Inverse on (0, 1]; bisection to 1e-14 relative.
    double psi_inverse(double w) const;
    /// Implied bivariate Kendall CDF K(w) = w - phi(w)/phi'(w), phi = psi^-1.
    double implied_bivariate_kendall_cdf(double w) const;

private:
    friend RadialFit fit_radial(const Matrix& sample3);

    std::vector<double> atoms_;     // ascending, positive
    std::vector<double> suffix_inv_;   // suffix sums of 1/r
    std::vector<double> suffix_inv2_;  // suffix sums of 1/r^2
    double residual_ = 0.0;
};

/// Fits the radial law to an n x 3 sample (n >= 10). Throws
/// std::runtime_error carrying the residual if the self-consistency system
/// cannot be met to 1e-8.
RadialFit fit_radial(const Matrix& sample3);

/// n rows from the fitted trivariate Archimedean copula: R* uniform on the
/// atoms, S uniform on the 2-simplex via normalized unit exponentials,
/// U_i = psi_n(R* S_i). Entries lie in (0, 1).
Matrix h0_resample(const RadialFit& fit, std::size_t n, RandomSource& rng);

/// The full trivariate test: distances and statistic on the sample, one
/// radial fit, B resampled replicates re-scored by the same pipeline, and
///   p = #{ T_b >= T_obs } / B.
/// The significance level is deliberately not consumed here; callers apply
/// (and may sweep) their own threshold. Deterministic given (sample3, B,
/// rng seed); replicates use streams derived by index, so `n_threads` only
/// changes the wall clock.
TripleDecision triple_test(const Matrix& sample3, int bootstrap_count, RandomSource& rng,
                           int n_threads = 1, TripleKey key = TripleKey{{0, 1, 2}});

}  // namespace nacest
