// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/generator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nacest {

namespace {

[[noreturn]] void throw_bad_theta(Family family, double theta) {
    throw std::domain_error(std::string("generator parameter out of range for ") +
                            family_name(family) + ": theta=" + std::to_string(theta));
}

// t / (e^t - 1) extended by its limit 1 at t = 0.
double debye_integrand(double t) {
    if (t < 1e-8) return 1.0 - t / 2.0;  // second-order expansion
    return t / std::expm1(t);
}

// Adaptive Simpson on [a, b] with absolute tolerance tol.
double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(double (*f)(double), double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

// D1(theta) = (1/theta) * int_0^theta t/(e^t - 1) dt. The integrand decays
// like t*e^-t; beyond t = 50 the remaining mass is below 1e-20.
double frank_debye1(double theta) {
    const double upper = std::min(theta, 50.0);
    double integral = integrate(debye_integrand, 0.0, upper, 1e-13);
    return integral / theta;
}

double amh_tau(double theta) {
    if (theta < 1e-5) {
        // Series around 0; the closed form cancels catastrophically there.
        return 2.0 * theta / 9.0 + theta * theta / 18.0;
    }
    const double om = 1.0 - theta;
    return 1.0 - 2.0 * (theta + om * om * std::log(om)) / (3.0 * theta * theta);
}

double joe_tau(double theta) {
    // 1 - 4 * sum_k 1 / (k (theta k + 2) (theta (k-1) + 2)), truncated when
    // the running term falls below 1e-14. Terms are positive and decreasing,
    // so the tail is bounded by term * k / (decay) ~ negligible at 1e-14.
    double sum = 0.0;
    for (long k = 1;; ++k) {
        const double kd = static_cast<double>(k);
        const double term = 1.0 / (kd * (theta * kd + 2.0) * (theta * (kd - 1.0) + 2.0));
        sum += term;
        if (term < 1e-14) break;
        if (k > 100000000L) break;  // unreachable for theta >= 1
    }
    return 1.0 - 4.0 * sum;
}

// Monotone bisection of tau_from_theta(family, .) over [lo, hi].
double invert_tau_bisect(Family family, double tau, double lo, double hi) {
    double flo = tau_from_theta(family, lo);
    double fhi = tau_from_theta(family, hi);
    if (tau <= flo) return lo;
    if (tau >= fhi) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = tau_from_theta(family, mid);
        if (fm < tau) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::amh: return "amh";
        case Family::clayton: return "clayton";
        case Family::frank: return "frank";
        case Family::gumbel: return "gumbel";
        case Family::joe: return "joe";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "amh") return Family::amh;
    if (name == "clayton") return Family::clayton;
    if (name == "frank") return Family::frank;
    if (name == "gumbel") return Family::gumbel;
    if (name == "joe") return Family::joe;
    throw std::invalid_argument("unknown generator family: " + name);
}

bool theta_admissible(Family family, double theta) {
    if (!std::isfinite(theta)) return false;
    switch (family) {
        case Family::amh: return theta >= 0.0 && theta < 1.0;
        case Family::clayton: return theta > 0.0;
        case Family::frank: return theta > 0.0;
        case Family::gumbel: return theta >= 1.0;
        case Family::joe: return theta >= 1.0;
    }
    return false;
}

void validate_generator(const Generator& gen) {
    if (!theta_admissible(gen.family, gen.theta)) throw_bad_theta(gen.family, gen.theta);
}

double psi(const Generator& gen, double x) {
    validate_generator(gen);
    if (!(x >= 0.0)) throw std::domain_error("psi: x must be nonnegative");
    const double theta = gen.theta;
    switch (gen.family) {
        case Family::amh:
            return (1.0 - theta) / (std::exp(x) - theta);
        case Family::clayton:
            return std::pow(1.0 + x, -1.0 / theta);
        case Family::frank: {
            // -log(1 - (1 - e^-theta) e^-x) / theta
            const double p = -std::expm1(-theta);
            return -std::log1p(-p * std::exp(-x)) / theta;
        }
        case Family::gumbel:
            return std::exp(-std::pow(x, 1.0 / theta));
        case Family::joe:
            return 1.0 - std::pow(-std::expm1(-x), 1.0 / theta);
    }
    return 0.0;
}

double psi_inv(const Generator& gen, double u) {
    validate_generator(gen);
    if (!(u > 0.0) || u > 1.0) throw std::domain_error("psi_inv: u must lie in (0, 1]");
    if (u == 1.0) return 0.0;
    const double theta = gen.theta;
    switch (gen.family) {
        case Family::amh:
            return std::log1p(-theta * (1.0 - u)) - std::log(u);
        case Family::clayton:
            return std::pow(u, -theta) - 1.0;
        case Family::frank: {
            const double p = -std::expm1(-theta);
            return -std::log(-std::expm1(-theta * u) / p);
        }
        case Family::gumbel:
            return std::pow(-std::log(u), theta);
        case Family::joe:
            return -std::log1p(-std::pow(1.0 - u, theta));
    }
    return 0.0;
}

double tau_from_theta(Family family, double theta) {
    if (!theta_admissible(family, theta)) throw_bad_theta(family, theta);
    switch (family) {
        case Family::amh: return amh_tau(theta);
        case Family::clayton: return theta / (theta + 2.0);
        case Family::frank: return 1.0 + 4.0 * (frank_debye1(theta) - 1.0) / theta;
        case Family::gumbel: return (theta - 1.0) / theta;
        case Family::joe: return joe_tau(theta);
    }
    return 0.0;
}

TauRange tau_range(Family family) {
    switch (family) {
        case Family::amh: return {0.0, amh_tau(1.0 - 1e-12)};  // sup 1/3
        case Family::clayton: return {0.0, 1.0};
        case Family::frank: return {0.0, 1.0};
        case Family::gumbel: return {0.0, 1.0};
        case Family::joe: return {0.0, 1.0};
    }
    return {0.0, 0.0};
}

double theta_from_tau(Family family, double tau) {
    const TauRange range = tau_range(family);
    if (!(tau >= range.lo) || tau >= range.hi) {
        throw std::range_error(std::string("tau not attainable by family ") +
                               family_name(family) + ": tau=" + std::to_string(tau));
    }
    switch (family) {
        case Family::clayton:
            if (tau == 0.0) throw std::range_error("clayton requires tau > 0");
            return 2.0 * tau / (1.0 - tau);
        case Family::gumbel:
            return 1.0 / (1.0 - tau);
        case Family::amh:
            return invert_tau_bisect(family, tau, 0.0, 1.0 - 1e-12);
        case Family::frank: {
            if (tau == 0.0) throw std::range_error("frank requires tau > 0");
            double hi = 1.0;
            while (tau_from_theta(family, hi) < tau && hi < 1e8) hi *= 2.0;
            return invert_tau_bisect(family, tau, 1e-10, hi);
        }
        case Family::joe: {
            double hi = 2.0;
            while (tau_from_theta(family, hi) < tau && hi < 1e8) hi *= 2.0;
            return invert_tau_bisect(family, tau, 1.0, hi);
        }
    }
    return 0.0;
}

bool check_nesting(const Generator& outer, const Generator& inner) {
    if (!theta_admissible(outer.family, outer.theta)) return false;
    if (!theta_admissible(inner.family, inner.theta)) return false;
    // Same family with strictly increasing parameter is the only certified
    // combination; cross-family nesting is rejected outright.
    if (outer.family != inner.family) return false;
    return outer.theta < inner.theta;
}

double bivariate_kendall_cdf(const Generator& gen, double w) {
    validate_generator(gen);
    if (!(w > 0.0) || !(w < 1.0)) throw std::domain_error("bivariate_kendall_cdf: w must lie in (0, 1)");
    const double theta = gen.theta;
    // K(w) = w - phi(w)/phi'(w) with phi = psi_inv, closed per family.
    switch (gen.family) {
        case Family::amh: {
            if (theta == 0.0) return w - w * std::log(w);  // independence
            const double a = 1.0 - theta * (1.0 - w);
            return w - std::log(a / w) * w * a / (theta - 1.0);
        }
        case Family::clayton:
            return w + w * (1.0 - std::pow(w, theta)) / theta;
        case Family::frank: {
            const double p = -std::expm1(-theta);
            const double q = -std::expm1(-theta * w);
            return w - std::log(q / p) * q / (theta * std::exp(-theta * w));
        }
        case Family::gumbel:
            return w - w * std::log(w) / theta;
        case Family::joe: {
            const double g = 1.0 - std::pow(1.0 - w, theta);
            return w - std::log(g) * g / (theta * std::pow(1.0 - w, theta - 1.0));
        }
    }
    return w;
}

}  // namespace nacest
