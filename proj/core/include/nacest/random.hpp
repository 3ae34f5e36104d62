// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nacest {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic stream of random variates. The same seed always yields the
/// bit-identical stream; derived streams depend only on (seed, index), so a
/// batch of work items can run in any order, on any number of threads, and
/// still reproduce.
///
/// Not thread-safe: use one source per thread of work.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed)
        : seed_(seed), engine_(detail::splitmix64(detail::splitmix64(seed))) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1); 53-bit resolution, never 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unit-rate exponential.
    double exponential() { return -std::log(uniform()); }

    /// Standard normal (Box-Muller, cosine branch).
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        return r * std::cos(6.283185307179586476925286766559 * uniform());
    }

    /// Uniform integer in [0, n). Rejection-free modulo bias is negligible
    /// for the n used here (n << 2^32), but use multiply-shift anyway.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Child stream keyed by (this stream's seed, index). Independent of how
    /// much of the parent stream has been consumed.
    RandomSource derive(std::uint64_t index) const {
        return RandomSource(detail::splitmix64(seed_ ^ index) + 0x632be59bd9b4e019ULL);
    }

    /// A batch of `count` derived streams, one per work index.
    std::vector<RandomSource> derive_streams(std::size_t count) const {
        std::vector<RandomSource> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(derive(i));
        return out;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace nacest
