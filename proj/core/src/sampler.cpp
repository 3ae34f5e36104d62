// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/sampler.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace nacest {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gamma(shape, scale 1) via Marsaglia-Tsang; shape < 1 boosted through the
// Gamma(shape + 1) * U^(1/shape) identity.
double sample_gamma(double shape, RandomSource& rng) {
    if (shape < 1.0) {
        const double u = rng.uniform();
        return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

// Logarithmic(p) on {1, 2, ...} with P(V = k) proportional to p^k / k.
// Kemp's second accelerated algorithm.
double sample_logarithmic(double p, RandomSource& rng) {
    if (p <= 0.0) return 1.0;
    const double v = rng.uniform();
    if (v >= p) return 1.0;
    const double u = rng.uniform();
    const double q = -std::expm1(u * std::log1p(-p));  // 1 - (1-p)^u
    if (v < q * q) {
        const double k = std::floor(1.0 + std::log(v) / std::log(q));
        return k < 1.0 ? 1.0 : k;
    }
    return v > q ? 1.0 : 2.0;
}

// Sibuya(alpha) on {1, 2, ...}: survival P(V > n) = 1 / (n B(n, 1 - alpha)).
// Inversion via the n^-alpha / Gamma(1-alpha) tail approximation with an
// exact one-step correction.
double sample_sibuya(double alpha, RandomSource& rng) {
    if (alpha >= 1.0) return 1.0;
    const double u = rng.uniform();
    if (u <= alpha) return 1.0;
    const double x_max = 1.0 / std::numeric_limits<double>::epsilon();
    const double g_inv = std::pow((1.0 - u) * std::tgamma(1.0 - alpha), -1.0 / alpha);
    const double f = std::floor(g_inv);
    if (g_inv > x_max) return f;
    // survival(f) = exp(lgamma(f + 1 - alpha) - lgamma(f + 1) - lgamma(1 - alpha))
    const double log_surv =
        std::lgamma(f + 1.0 - alpha) - std::lgamma(f + 1.0) - std::lgamma(1.0 - alpha);
    if (1.0 - u < std::exp(log_surv)) return std::ceil(g_inv);
    return f < 1.0 ? 1.0 : f;
}

// Geometric on {1, 2, ...} with success probability 1 - theta.
double sample_geometric_shifted(double theta, RandomSource& rng) {
    if (theta <= 0.0) return 1.0;
    return 1.0 + std::floor(std::log(rng.uniform()) / std::log(theta));
}

// Exponentially tilted positive stable with Laplace transform
// exp(-v0 ((1 + x)^alpha - 1)). The law is infinitely divisible, so it is
// drawn as a sum of ceil(v0) chunks, each by tilt rejection with acceptance
// probability at least e^-1. A single-shot rejection would need e^v0
// proposals on average, which is hopeless for large v0.
double sample_tilted_stable(double alpha, double v0, RandomSource& rng) {
    const double m = std::max(1.0, std::ceil(v0));
    const double chunk_scale = std::pow(v0 / m, 1.0 / alpha);
    double total = 0.0;
    for (double j = 0; j < m; ++j) {
        for (long it = 0;; ++it) {
            if (it >= 1000000L) {
                throw std::runtime_error("tilted stable sampler exceeded its iteration cap");
            }
            const double s = chunk_scale * sample_positive_stable(alpha, rng);
            if (rng.uniform() < std::exp(-s)) {
                total += s;
                break;
            }
        }
    }
    return total;
}

// Sibuya variate tilted by p1^V (needed for nested Frank): rejection with
// acceptance probability p1^S per proposal, overall rate 1 - (1-p1)^alpha.
double sample_tilted_sibuya(double alpha, double p1, RandomSource& rng) {
    for (long it = 0;; ++it) {
        if (it >= 1000000L) {
            throw std::runtime_error("tilted Sibuya sampler exceeded its iteration cap");
        }
        const double s = sample_sibuya(alpha, rng);
        if (std::log(rng.uniform()) < s * std::log(p1)) return s;
    }
}

double inner_frailty_gumbel(double theta0, double theta1, double v0, RandomSource& rng) {
    const double alpha = theta0 / theta1;
    return std::pow(v0, 1.0 / alpha) * sample_positive_stable(alpha, rng);
}

double inner_frailty_clayton(double theta0, double theta1, double v0, RandomSource& rng) {
    return sample_tilted_stable(theta0 / theta1, v0, rng);
}

double inner_frailty_joe(double theta0, double theta1, double v0, RandomSource& rng) {
    const double alpha = theta0 / theta1;
    const long count = static_cast<long>(std::llround(v0));
    double total = 0.0;
    for (long i = 0; i < count; ++i) total += sample_sibuya(alpha, rng);
    return total;
}

double inner_frailty_frank(double theta0, double theta1, double v0, RandomSource& rng) {
    const double alpha = theta0 / theta1;
    const double p1 = -std::expm1(-theta1);
    const long count = static_cast<long>(std::llround(v0));
    double total = 0.0;
    for (long i = 0; i < count; ++i) total += sample_tilted_sibuya(alpha, p1, rng);
    return total;
}

double inner_frailty_amh(double theta0, double theta1, double v0, RandomSource& rng) {
    // V01 = v0 + NegBinomial(r = v0, failure weight beta).
    const double beta = (theta1 - theta0) / (1.0 - theta0);
    const long count = static_cast<long>(std::llround(v0));
    double total = v0;
    if (beta <= 0.0) return total;
    const double log_beta = std::log(beta);
    for (long i = 0; i < count; ++i) {
        total += std::floor(std::log(rng.uniform()) / log_beta);
    }
    return total;
}

}  // namespace

double sample_positive_stable(double alpha, RandomSource& rng) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::domain_error("stable index must lie in (0, 1]");
    if (alpha == 1.0) return 1.0;
    // Kanter's representation for Laplace transform exp(-t^alpha).
    const double theta = kPi * rng.uniform();
    const double e = rng.exponential();
    const double s = std::sin(theta);
    const double a = std::sin(alpha * theta);
    const double b = std::sin((1.0 - alpha) * theta);
    return a / std::pow(s, 1.0 / alpha) * std::pow(b / e, (1.0 - alpha) / alpha);
}

double sample_frailty(const Generator& gen, RandomSource& rng) {
    validate_generator(gen);
    const double theta = gen.theta;
    switch (gen.family) {
        case Family::clayton: return sample_gamma(1.0 / theta, rng);
        case Family::gumbel: return sample_positive_stable(1.0 / theta, rng);
        case Family::frank: return sample_logarithmic(-std::expm1(-theta), rng);
        case Family::joe: return sample_sibuya(1.0 / theta, rng);
        case Family::amh: return sample_geometric_shifted(theta, rng);
    }
    return 1.0;
}

Matrix sample_archimedean(const Generator& gen, int d, std::size_t n, RandomSource& rng) {
    validate_generator(gen);
    if (d < 2) throw std::invalid_argument("sample_archimedean: d must be at least 2");
    if (n < 1) throw std::invalid_argument("sample_archimedean: n must be at least 1");
    Matrix out(n, static_cast<std::size_t>(d));
    for (std::size_t r = 0; r < n; ++r) {
        const double v = sample_frailty(gen, rng);
        for (int c = 0; c < d; ++c) out(r, c) = psi(gen, rng.exponential() / v);
    }
    return out;
}

double sample_inner_frailty(const Generator& outer, const Generator& inner, double v0,
                            RandomSource& rng) {
    if (!check_nesting(outer, inner)) {
        throw std::invalid_argument(std::string("nesting violation: ") + family_name(outer.family) +
                                    "(" + std::to_string(outer.theta) + ") over " +
                                    family_name(inner.family) + "(" + std::to_string(inner.theta) +
                                    ")");
    }
    if (!(v0 > 0.0)) throw std::domain_error("sample_inner_frailty: v0 must be positive");
    switch (outer.family) {
        case Family::gumbel: return inner_frailty_gumbel(outer.theta, inner.theta, v0, rng);
        case Family::clayton: return inner_frailty_clayton(outer.theta, inner.theta, v0, rng);
        case Family::joe: return inner_frailty_joe(outer.theta, inner.theta, v0, rng);
        case Family::frank: return inner_frailty_frank(outer.theta, inner.theta, v0, rng);
        case Family::amh: return inner_frailty_amh(outer.theta, inner.theta, v0, rng);
    }
    throw std::invalid_argument("unsupported family pair for nesting");
}

void validate_model(const NacModel& model) {
    for (LeafSet node : model.tree.branching_nodes()) {
        const auto it = model.generators.find(node);
        if (it == model.generators.end()) {
            throw std::invalid_argument("model: branching node without a generator");
        }
        validate_generator(it->second);
        for (LeafSet child : model.tree.children(node)) {
            if (leafset_size(child) < 2) continue;
            const Generator& inner = model.generators.at(child);
            if (!check_nesting(it->second, inner)) {
                throw std::invalid_argument(
                    "model: generators violate the nesting requirement (same family, strictly "
                    "increasing theta from root to leaves)");
            }
        }
    }
}

Matrix sample_nac(const NacModel& model, std::size_t n, RandomSource& rng) {
    validate_model(model);
    const int d = model.tree.leaf_count();
    if (d < 2) throw std::invalid_argument("sample_nac: model needs at least two leaves");
    if (n < 1) throw std::invalid_argument("sample_nac: n must be at least 1");

    // Parent branching node of every leaf, fixed once.
    const LeafSet root = model.tree.root();
    std::vector<LeafSet> leaf_parent(d, root);
    std::vector<std::pair<LeafSet, LeafSet>> edges;  // (parent, child) branching pairs, top-down
    {
        std::vector<LeafSet> stack{root};
        while (!stack.empty()) {
            const LeafSet node = stack.back();
            stack.pop_back();
            for (LeafSet child : model.tree.children(node)) {
                if (leafset_size(child) == 1) {
                    leaf_parent[std::countr_zero(child)] = node;
                } else {
                    edges.emplace_back(node, child);
                    stack.push_back(child);
                }
            }
        }
    }

    Matrix out(n, static_cast<std::size_t>(d));
    std::map<LeafSet, double> frailty;
    for (std::size_t r = 0; r < n; ++r) {
        frailty.clear();
        frailty[root] = sample_frailty(model.generators.at(root), rng);
        for (const auto& [parent, child] : edges) {
            frailty[child] = sample_inner_frailty(model.generators.at(parent),
                                                  model.generators.at(child), frailty.at(parent), rng);
        }
        for (int c = 0; c < d; ++c) {
            const LeafSet p = leaf_parent[c];
            out(r, static_cast<std::size_t>(c)) =
                psi(model.generators.at(p), rng.exponential() / frailty.at(p));
        }
    }
    return out;
}

}  // namespace nacest
