// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "nacest/generator.hpp"
#include "nacest/random.hpp"
#include "nacest/tree.hpp"

namespace nacest {

/// Dense row-major matrix of observations; rows are samples, columns are
/// variables.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// A copy of one column.
    std::vector<double> column(std::size_t c) const {
        std::vector<double> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
        return out;
    }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// A nested Archimedean copula model: a tree structure plus one generator
/// per branching node (keyed by the node's leaf set). Parent/child branching
/// nodes must satisfy check_nesting.
struct NacModel {
    TreeStructure tree;
    std::map<LeafSet, Generator> generators;
};

/// Throws std::invalid_argument when a branching node lacks a generator or
/// a parent/child generator pair violates the nesting requirements.
void validate_model(const NacModel& model);

/// One draw of the latent frailty V whose Laplace transform is the family's
/// generator: Gamma(1/theta) for Clayton, positive stable(1/theta) for
/// Gumbel, Logarithmic(1 - e^-theta) for Frank, Sibuya(1/theta) for Joe and
/// Geometric(1 - theta) for AMH. Discrete frailties are returned as their
/// (positive integer) values.
double sample_frailty(const Generator& gen, RandomSource& rng);

/// n i.i.d. rows from the exchangeable d-variate Archimedean copula:
/// U_i = psi(E_i / V) with E_i unit exponential.
Matrix sample_archimedean(const Generator& gen, int d, std::size_t n, RandomSource& rng);

/// Draws the child-node frailty V01 with Laplace transform
/// exp(-v0 * (psi_outer^-1 o psi_inner)). Requires check_nesting(outer,
/// inner). Supported pairs: Clayton/Clayton, Gumbel/Gumbel, Frank/Frank,
/// Joe/Joe, AMH/AMH.
double sample_inner_frailty(const Generator& outer, const Generator& inner, double v0,
                            RandomSource& rng);

/// n rows from the nested model by the recursive frailty construction: the
/// root frailty is drawn first, every child branching node draws its frailty
/// conditionally on its parent's, and each leaf takes psi_P(E / V_P) at its
/// parent node P. Margins are uniform on (0, 1).
Matrix sample_nac(const NacModel& model, std::size_t n, RandomSource& rng);

/// Positive stable variate with Laplace transform exp(-t^alpha), alpha in
/// (0, 1]; degenerate at 1 for alpha = 1. Exposed for distributional tests.
double sample_positive_stable(double alpha, RandomSource& rng);

}  // namespace nacest
