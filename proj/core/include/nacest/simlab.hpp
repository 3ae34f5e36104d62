// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "nacest/reconstruct.hpp"
#include "nacest/sampler.hpp"

namespace nacest {

/// One Monte Carlo experiment: how often does the estimation pipeline
/// recover the generating structure, as a function of the sample size.
struct ExperimentConfig {
    NacModel model;
    std::vector<std::size_t> sample_sizes;
    int replications = 100;
    double alpha0 = 0.10;
    int bootstrap = 200;
    std::uint64_t base_seed = 0;
};

struct ExperimentRow {
    std::size_t n = 0;
    double correct_fraction = 0.0;
    double standard_error = 0.0;  // binomial, sqrt(p(1-p)/R)
    int replications = 0;
};

/// Runs the experiment: for every configured n, `replications` independent
/// draws from the model, each followed by estimate_structure and a
/// structural comparison against the model tree. Replication r of sample
/// size index s uses a stream derived from (base_seed, s, r), so the table
/// is bitwise reproducible for a fixed config regardless of thread count.
/// Failures inside a replication are annotated with its index and rethrown.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg, int n_threads = 1);

}  // namespace nacest
