// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front door: estimate a tree structure from CSV data, test a
// single triple, sample from a model, run a simulation experiment, or dump
// empirical Kendall distributions. All stochastic commands take an explicit
// --seed and produce byte-identical output for identical invocations.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nacest/dataset.hpp"
#include "nacest/json_io.hpp"
#include "nacest/kendall.hpp"
#include "nacest/parallel.hpp"
#include "nacest/reconstruct.hpp"
#include "nacest/sampler.hpp"
#include "nacest/simlab.hpp"
#include "nacest/triad.hpp"

namespace {

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void warn_about_ties(const nacest::Dataset& ds) {
    for (std::size_t c = 0; c < ds.columns.size(); ++c) {
        if (ds.tied_columns[c]) {
            std::cerr << "WARNING: column '" << ds.columns[c]
                      << "' contains tied values; ranks treat ties via strict inequalities\n";
        }
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << text;
}

std::string diagnostics_path_for(const std::string& output) {
    const std::size_t dot = output.rfind('.');
    const std::string stem = dot == std::string::npos ? output : output.substr(0, dot);
    return stem + ".diagnostics.json";
}

int run_estimate(const std::string& input, const std::string& cols, double alpha, int bootstrap,
                 std::uint64_t seed, const std::string& output, std::string diagnostics,
                 int threads) {
    const nacest::Dataset ds = nacest::load_csv(input, split_names(cols));
    warn_about_ties(ds);
    if (ds.values.cols() < 3) throw std::runtime_error("estimate needs at least 3 columns");
    if (ds.values.rows() < 10) throw std::runtime_error("estimate needs at least 10 rows");

    nacest::RandomSource rng(seed);
    const nacest::EstimateResult result =
        nacest::estimate_structure(ds.values, ds.columns, alpha, bootstrap, rng, threads);

    nacest::save_json_file(output, nacest::tree_to_json(result.tree));
    if (diagnostics.empty()) diagnostics = diagnostics_path_for(output);
    nacest::save_json_file(diagnostics, nacest::estimate_to_json(result, ds.columns));
    std::cout << nacest::format_tree(result.tree) << "\n";
    std::cerr << "chosen alpha: " << nacest::format_double(result.chosen_alpha) << " ("
              << result.faulty_alphas.size() << " faulty threshold(s) skipped)\n";
    return 0;
}

int run_triple_test(const std::string& input, const std::string& cols, int bootstrap,
                    std::uint64_t seed, int threads) {
    const std::vector<std::string> names = split_names(cols);
    if (names.size() != 3) throw std::runtime_error("triple-test requires exactly 3 columns");
    const nacest::Dataset ds = nacest::load_csv(input, names);
    warn_about_ties(ds);
    nacest::RandomSource rng(seed);
    const nacest::TripleDecision d =
        nacest::triple_test(ds.values, bootstrap, rng, threads, nacest::TripleKey{{0, 1, 2}});
    std::cout << nacest::decision_to_json(d, ds.columns).dump(2) << "\n";
    return 0;
}

int run_sample(const std::string& model_path, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
    const nacest::NacModel model = nacest::model_from_json(nacest::load_json_file(model_path));
    nacest::RandomSource rng(seed);
    const nacest::Matrix sample = nacest::sample_nac(model, n, rng);
    const std::string csv = nacest::matrix_to_csv(model.tree.leaves(), sample);
    if (out_path.empty()) std::cout << csv;
    else write_text_file(out_path, csv);
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_path, int threads) {
    const nacest::ExperimentConfig cfg =
        nacest::experiment_from_json(nacest::load_json_file(config_path));
    const std::vector<nacest::ExperimentRow> rows = nacest::run_experiment(cfg, threads);
    std::string csv = "n,correct_fraction,se,replications\n";
    for (const auto& row : rows) {
        csv += std::to_string(row.n) + ',' + nacest::format_double(row.correct_fraction) + ',' +
               nacest::format_double(row.standard_error) + ',' + std::to_string(row.replications) +
               '\n';
    }
    if (out_path.empty()) std::cout << csv;
    else write_text_file(out_path, csv);
    return 0;
}

int run_kendall(const std::string& input, const std::string& cols, int grid,
                const std::string& out_path) {
    const std::vector<std::string> names = split_names(cols);
    if (names.size() != 2 && names.size() != 3) {
        throw std::runtime_error("kendall requires 2 or 3 columns");
    }
    const nacest::Dataset ds = nacest::load_csv(input, names);
    warn_about_ties(ds);
    const nacest::KendallSample ks =
        names.size() == 2
            ? nacest::pair_pseudo_obs(ds.values.column(0), ds.values.column(1))
            : nacest::triple_pseudo_obs(ds.values.column(0), ds.values.column(1),
                                        ds.values.column(2));
    std::string csv = "series,x,y\n";
    const auto& sorted = ks.sorted();
    for (std::size_t m = 0; m < sorted.size(); ++m) {
        csv += "pseudo_obs," + std::to_string(m + 1) + ',' + nacest::format_double(sorted[m]) + '\n';
    }
    for (int g = 0; g <= grid; ++g) {
        const double w = static_cast<double>(g) / static_cast<double>(grid);
        csv += "ecdf," + nacest::format_double(w) + ',' + nacest::format_double(ks.ecdf(w)) + '\n';
    }
    if (out_path.empty()) std::cout << csv;
    else write_text_file(out_path, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonparametric estimation of nested Archimedean copula tree structures"};
    app.require_subcommand(1);
    const int hw_threads = nacest::default_threads();

    // estimate
    std::string est_input, est_cols, est_output = "tree.json", est_diag;
    double est_alpha = 0.10;
    int est_bootstrap = 200;
    std::uint64_t est_seed = 0;
    int est_threads = hw_threads;
    auto* estimate = app.add_subcommand("estimate", "Estimate the tree structure of CSV data");
    estimate->add_option("--input", est_input, "Input CSV with header row")->required();
    estimate->add_option("--cols", est_cols, "Comma-separated column names (default: all)");
    estimate->add_option("--alpha", est_alpha, "Initial significance level")->check(CLI::Range(0.0, 1.0));
    estimate->add_option("--bootstrap", est_bootstrap, "Bootstrap replicates per triple")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--seed", est_seed, "Random seed (required)")->required();
    estimate->add_option("--output", est_output, "Tree JSON output path");
    estimate->add_option("--diagnostics", est_diag,
                         "Diagnostics JSON path (default: <output>.diagnostics.json)");
    estimate->add_option("--threads", est_threads, "Worker threads")->check(CLI::PositiveNumber);

    // triple-test
    std::string tt_input, tt_cols;
    int tt_bootstrap = 200;
    std::uint64_t tt_seed = 0;
    int tt_threads = hw_threads;
    auto* triple = app.add_subcommand("triple-test", "Test the structure of three columns");
    triple->add_option("--input", tt_input, "Input CSV with header row")->required();
    triple->add_option("--cols", tt_cols, "Three comma-separated column names")->required();
    triple->add_option("--bootstrap", tt_bootstrap, "Bootstrap replicates")->check(CLI::PositiveNumber);
    triple->add_option("--seed", tt_seed, "Random seed (required)")->required();
    triple->add_option("--threads", tt_threads, "Worker threads")->check(CLI::PositiveNumber);

    // sample
    std::string smp_model, smp_out;
    std::size_t smp_n = 0;
    std::uint64_t smp_seed = 0;
    auto* sample = app.add_subcommand("sample", "Sample from a model JSON");
    sample->add_option("--model", smp_model, "Model JSON path")->required();
    sample->add_option("--n", smp_n, "Number of rows")->required()->check(CLI::PositiveNumber);
    sample->add_option("--seed", smp_seed, "Random seed (required)")->required();
    sample->add_option("--out", smp_out, "Output CSV path (default: stdout)");

    // simulate
    std::string sim_config, sim_out;
    int sim_threads = hw_threads;
    auto* simulate = app.add_subcommand("simulate", "Run a recovery-rate experiment");
    simulate->add_option("--config", sim_config, "Experiment config JSON (carries the seed)")
        ->required();
    simulate->add_option("--out", sim_out, "Output CSV path (default: stdout)");
    simulate->add_option("--threads", sim_threads, "Worker threads")->check(CLI::PositiveNumber);

    // kendall
    std::string ken_input, ken_cols, ken_out;
    int ken_grid = 200;
    auto* kendall = app.add_subcommand("kendall", "Empirical Kendall distribution of 2-3 columns");
    kendall->add_option("--input", ken_input, "Input CSV with header row")->required();
    kendall->add_option("--cols", ken_cols, "Two or three comma-separated column names")->required();
    kendall->add_option("--grid", ken_grid, "Grid points for the CDF")->check(CLI::PositiveNumber);
    kendall->add_option("--out", ken_out, "Output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (estimate->parsed()) {
            return run_estimate(est_input, est_cols, est_alpha, est_bootstrap, est_seed, est_output,
                                est_diag, est_threads);
        }
        if (triple->parsed()) {
            return run_triple_test(tt_input, tt_cols, tt_bootstrap, tt_seed, tt_threads);
        }
        if (sample->parsed()) return run_sample(smp_model, smp_n, smp_seed, smp_out);
        if (simulate->parsed()) return run_simulate(sim_config, sim_out, sim_threads);
        if (kendall->parsed()) return run_kendall(ken_input, ken_cols, ken_grid, ken_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
