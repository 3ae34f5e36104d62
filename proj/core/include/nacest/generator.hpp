// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace nacest {

/// The five supported Archimedean generator families.
enum class Family { amh, clayton, frank, gumbel, joe };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

/// An Archimedean generator: a family tag plus its real parameter.
///
/// Admissible parameter ranges:
///   AMH      theta in [0, 1)
///   Clayton  theta in (0, inf)
///   Frank    theta in (0, inf)
///   Gumbel   theta in [1, inf)
///   Joe      theta in [1, inf)
///
/// Values are immutable after construction and all operations on them are
/// pure, so they can be shared freely across threads.
struct Generator {
    Family family;
    double theta;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Throws std::domain_error if theta is outside the family's range.
void validate_generator(const Generator& gen);
bool theta_admissible(Family family, double theta);

/// Generator function psi(x) for x >= 0. psi(0) = 1, psi is convex and
/// decreasing with limit 0 at infinity.
double psi(const Generator& gen, double x);

/// Inverse generator on (0, 1]. psi_inv(1) = 0.
double psi_inv(const Generator& gen, double u);

/// Population Kendall's tau implied by the parameter. Frank integrates the
/// Debye-type integral numerically; Joe sums its series until the running
/// term drops below 1e-14.
double tau_from_theta(Family family, double theta);

/// Inverts tau_from_theta. Clayton and Gumbel are closed-form, the rest
/// bracket and bisect. Throws std::range_error when tau is not attainable
/// by the family (e.g. AMH tau > ~1/3, negative tau anywhere).
double theta_from_tau(Family family, double tau);

/// Attainable tau range of a family, as [lo, hi) bounds.
struct TauRange {
    double lo;
    double hi;
};
TauRange tau_range(Family family);

/// True iff `inner` may be nested directly under `outer`: both from the
/// same family with theta_outer strictly below theta_inner. Cross-family
/// pairs are rejected. Never throws; invalid generators yield false.
bool check_nesting(const Generator& outer, const Generator& inner);

/// Analytic bivariate Kendall distribution function
///   K(w) = w - phi(w) / phi'(w),  phi = psi_inv,
/// for w in (0, 1). Nondecreasing with K(w) >= w.
double bivariate_kendall_cdf(const Generator& gen, double w);

}  // namespace nacest
