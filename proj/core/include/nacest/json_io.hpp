// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nacest/reconstruct.hpp"
#include "nacest/sampler.hpp"
#include "nacest/simlab.hpp"
#include "nacest/tree.hpp"
#include "nacest/triad.hpp"

namespace nacest {

using nlohmann::json;

/// Tree <-> {"leaves": [...], "nodes": [[label, ...], ...]}. The node list
/// is complete (root and singletons included) and validated on input.
json tree_to_json(const TreeStructure& tree);
TreeStructure tree_from_json(const json& j);

/// Generator <-> {"family": "clayton", "theta": 2.0}.
json generator_to_json(const Generator& gen);
Generator generator_from_json(const json& j);

/// Model JSON:
///   {
///     "tree": {...} or "tree_text": "(U1,(U2,U3))",
///     "family": "clayton",                      // optional default
///     "generators": [ {"node": ["U2","U3"], "theta": 8.0}, ... ]
///   }
/// Each generator entry may carry "family" (else the default applies) and
/// either "theta" or "tau" (converted via the family's tau calibration).
json model_to_json(const NacModel& model);
NacModel model_from_json(const json& j);

json decision_to_json(const TripleDecision& d, const std::vector<std::string>& labels);

json estimate_to_json(const EstimateResult& r, const std::vector<std::string>& labels);

/// Experiment config JSON: a "model" object as above plus "sample_sizes",
/// "replications", "alpha", "bootstrap" and "seed".
ExperimentConfig experiment_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace nacest
