// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nacest/kendall.hpp"
#include "nacest/random.hpp"
#include "oracles.hpp"

using namespace nacest;
using nacest::testing::merged_grid_cdf_distance;
using nacest::testing::naive_kendall_tau;
using nacest::testing::naive_pair_pseudo_obs;

TEST_CASE("pair pseudo-observations by hand") {
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> y = {1, 3, 2};
    const KendallSample ks = pair_pseudo_obs(x, y);
    REQUIRE(ks.size() == 3);
    CHECK(ks.values()[0] == doctest::Approx(0.0));
    CHECK(ks.values()[1] == doctest::Approx(0.25));
    CHECK(ks.values()[2] == doctest::Approx(0.25));
}

TEST_CASE("comonotone and countermonotone pairs") {
    const int n = 40;
    std::vector<double> up(n), down(n);
    std::iota(up.begin(), up.end(), 1.0);
    for (int i = 0; i < n; ++i) down[i] = n - i;
    const KendallSample mono = pair_pseudo_obs(up, up);
    for (int m = 0; m < n; ++m) {
        CHECK(mono.values()[m] == doctest::Approx(static_cast<double>(m) / (n + 1)));
    }
    const KendallSample anti = pair_pseudo_obs(up, down);
    for (int m = 0; m < n; ++m) CHECK(anti.values()[m] == 0.0);
}

TEST_CASE("fast pair pseudo-observations equal the double sum on 10^4 instances") {
    RandomSource rng(404);
    for (int rep = 0; rep < 10000; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(40);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse integer values make ties frequent.
            x[i] = static_cast<double>(rng.uniform_index(8));
            y[i] = static_cast<double>(rng.uniform_index(8));
        }
        const KendallSample fast = pair_pseudo_obs(x, y);
        const std::vector<double> slow = naive_pair_pseudo_obs(x, y);
        for (std::size_t i = 0; i < n; ++i) CHECK(fast.values()[i] == slow[i]);
    }
}

TEST_CASE("triple pseudo-observations by hand") {
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> y = {1, 3, 2};
    const std::vector<double> z = {1, 2, 3};
    const KendallSample ks = triple_pseudo_obs(x, y, z);
    CHECK(ks.values()[0] == doctest::Approx(0.0));
    CHECK(ks.values()[1] == doctest::Approx(0.25));
    CHECK(ks.values()[2] == doctest::Approx(0.25));

    const int n = 17;
    std::vector<double> up(n);
    std::iota(up.begin(), up.end(), 1.0);
    const KendallSample mono = triple_pseudo_obs(up, up, up);
    for (int m = 0; m < n; ++m) {
        CHECK(mono.values()[m] == doctest::Approx(static_cast<double>(m) / (n + 1)));
    }
}

TEST_CASE("pseudo-observations stay within their bounds") {
    RandomSource rng(811);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(50);
        std::vector<double> x(n), y(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform();
            y[i] = rng.uniform();
            z[i] = rng.uniform();
        }
        const KendallSample ks = triple_pseudo_obs(x, y, z);
        for (double w : ks.values()) {
            CHECK(w >= 0.0);
            CHECK(w <= static_cast<double>(n - 1) / static_cast<double>(n + 1));
        }
    }
}

TEST_CASE("ecdf steps") {
    const KendallSample ks(std::vector<double>{0.0, 0.25, 0.25});
    CHECK(ks.ecdf(0.1) == doctest::Approx(1.0 / 3.0));
    CHECK(ks.ecdf(-0.5) == 0.0);
    CHECK(ks.ecdf(0.25) == 1.0);
    CHECK(ks.ecdf(2.0) == 1.0);
}

TEST_CASE("l1 distance order-statistic form") {
    const KendallSample a(std::vector<double>{0.0, 0.25, 0.25});
    const KendallSample b(std::vector<double>{0.25, 0.25, 0.5});
    CHECK(l1_distance(a, b) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(l1_distance(a, a) == 0.0);
    CHECK_THROWS_AS(l1_distance(a, KendallSample(std::vector<double>{0.1})),
                    std::invalid_argument);
}

TEST_CASE("l1 distance equals the merged-grid integral") {
    RandomSource rng(99);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(60);
        std::vector<double> wa(n), wb(n);
        for (std::size_t i = 0; i < n; ++i) {
            wa[i] = rng.uniform() * 0.9;
            wb[i] = rng.uniform() * 0.9;
        }
        const KendallSample a(wa), b(wb);
        const double direct = l1_distance(a, b);
        CHECK(direct == doctest::Approx(merged_grid_cdf_distance(a, b)).epsilon(1e-12));
        CHECK(direct == doctest::Approx(l1_distance(b, a)).epsilon(1e-15));
    }
}

TEST_CASE("l1 distance satisfies the triangle inequality") {
    RandomSource rng(123);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(30);
        auto draw = [&] {
            std::vector<double> w(n);
            for (auto& v : w) v = rng.uniform();
            return KendallSample(w);
        };
        const KendallSample a = draw(), b = draw(), c = draw();
        CHECK(l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c) + 1e-12);
    }
}

TEST_CASE("pseudo-observations are rank-invariant") {
    RandomSource rng(5150);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(40);
        std::vector<double> x(n), y(n), tx(n), ty(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.normal();
            y[i] = rng.normal();
            tx[i] = std::exp(2.0 * x[i]) + 1.0;   // strictly increasing
            ty[i] = std::atan(y[i]) * 3.0 - 0.5;  // strictly increasing
        }
        const KendallSample plain = pair_pseudo_obs(x, y);
        const KendallSample transformed = pair_pseudo_obs(tx, ty);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(plain.values()[i] == transformed.values()[i]);
        }
    }
}

TEST_CASE("empirical Kendall tau matches the quadratic version") {
    RandomSource rng(2024);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 2 + rng.uniform_index(60);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng.uniform_index(10));
            y[i] = static_cast<double>(rng.uniform_index(10));
        }
        CHECK(empirical_kendall_tau(x, y) ==
              doctest::Approx(naive_kendall_tau(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("length mismatches are rejected") {
    const std::vector<double> a = {1, 2, 3};
    const std::vector<double> b = {1, 2};
    CHECK_THROWS_AS(pair_pseudo_obs(a, b), std::invalid_argument);
    CHECK_THROWS_AS(triple_pseudo_obs(a, a, b), std::invalid_argument);
    CHECK_THROWS_AS(empirical_kendall_tau(a, b), std::invalid_argument);
}
