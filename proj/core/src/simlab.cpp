// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/simlab.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nacest/parallel.hpp"

namespace nacest {

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg, int n_threads) {
    validate_model(cfg.model);
    if (cfg.replications < 1) throw std::invalid_argument("run_experiment: replications must be >= 1");
    if (cfg.sample_sizes.empty()) throw std::invalid_argument("run_experiment: no sample sizes");

    const RandomSource base(cfg.base_seed);
    std::vector<ExperimentRow> rows;
    rows.reserve(cfg.sample_sizes.size());
    const std::size_t reps = static_cast<std::size_t>(cfg.replications);

    for (std::size_t s = 0; s < cfg.sample_sizes.size(); ++s) {
        const std::size_t n = cfg.sample_sizes[s];
        const RandomSource size_stream = base.derive(s);
        std::vector<char> correct(reps, 0);
        parallel_for(reps, n_threads, [&](std::size_t r) {
            try {
                RandomSource rng = size_stream.derive(r);
                const Matrix sample = sample_nac(cfg.model, n, rng);
                const EstimateResult est = estimate_structure(
                    sample, cfg.model.tree.leaves(), cfg.alpha0, cfg.bootstrap, rng, 1);
                correct[r] = est.tree.same_structure(cfg.model.tree) ? 1 : 0;
            } catch (const std::exception& e) {
                throw std::runtime_error("replication " + std::to_string(r) + " at n=" +
                                         std::to_string(n) + ": " + e.what());
            }
        });
        std::size_t hits = 0;
        for (char c : correct) hits += c;
        const double p = static_cast<double>(hits) / static_cast<double>(reps);
        rows.push_back(ExperimentRow{
            n, p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps)), cfg.replications});
    }
    return rows;
}

}  // namespace nacest
