// Copyright (c) 2026 nacest developers
// SPDX-License-Identifier: Apache-2.0

#include "nacest/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace nacest {

namespace {

std::vector<std::string> node_labels(const TreeStructure& tree, LeafSet node) {
    std::vector<std::string> out;
    for (int i = 0; i < tree.leaf_count(); ++i)
        if (node >> i & 1) out.push_back(tree.leaves()[i]);
    return out;
}

}  // namespace

json tree_to_json(const TreeStructure& tree) {
    json j;
    j["leaves"] = tree.leaves();
    json nodes = json::array();
    for (LeafSet node : tree.nodes()) nodes.push_back(node_labels(tree, node));
    j["nodes"] = std::move(nodes);
    return j;
}

TreeStructure tree_from_json(const json& j) {
    if (!j.contains("leaves") || !j.contains("nodes")) {
        throw std::invalid_argument("tree JSON requires 'leaves' and 'nodes'");
    }
    return tree_from_label_nodes(j.at("leaves").get<std::vector<std::string>>(),
                                 j.at("nodes").get<std::vector<std::vector<std::string>>>());
}

json generator_to_json(const Generator& gen) {
    return json{{"family", family_name(gen.family)}, {"theta", gen.theta}};
}

Generator generator_from_json(const json& j) {
    const Generator gen{family_from_name(j.at("family").get<std::string>()),
                        j.at("theta").get<double>()};
    validate_generator(gen);
    return gen;
}

json model_to_json(const NacModel& model) {
    json j;
    j["tree"] = tree_to_json(model.tree);
    json gens = json::array();
    for (const auto& [node, gen] : model.generators) {
        json g = generator_to_json(gen);
        g["node"] = node_labels(model.tree, node);
        gens.push_back(std::move(g));
    }
    j["generators"] = std::move(gens);
    return j;
}

NacModel model_from_json(const json& j) {
    TreeStructure tree = [&] {
        if (j.contains("tree_text")) return parse_tree(j.at("tree_text").get<std::string>());
        if (j.contains("tree")) return tree_from_json(j.at("tree"));
        throw std::invalid_argument("model JSON requires 'tree' or 'tree_text'");
    }();

    const bool has_default_family = j.contains("family");
    const std::string default_family =
        has_default_family ? j.at("family").get<std::string>() : std::string();

    NacModel model{std::move(tree), {}};
    if (!j.contains("generators") || !j.at("generators").is_array()) {
        throw std::invalid_argument("model JSON requires a 'generators' array");
    }
    for (const json& entry : j.at("generators")) {
        if (!entry.contains("node")) throw std::invalid_argument("generator entry lacks 'node'");
        LeafSet mask = 0;
        for (const auto& label : entry.at("node").get<std::vector<std::string>>()) {
            const int idx = model.tree.leaf_index(label);
            if (idx < 0) throw std::invalid_argument("generator node label '" + label +
                                                     "' is not a leaf of the tree");
            mask |= LeafSet{1} << idx;
        }
        if (!model.tree.has_node(mask) || leafset_size(mask) < 2) {
            throw std::invalid_argument("generator entry does not name a branching node");
        }
        const std::string fam_name = entry.contains("family")
                                         ? entry.at("family").get<std::string>()
                                         : default_family;
        if (fam_name.empty()) {
            throw std::invalid_argument("generator entry lacks 'family' and no default is set");
        }
        const Family family = family_from_name(fam_name);
        double theta;
        if (entry.contains("theta")) {
            theta = entry.at("theta").get<double>();
        } else if (entry.contains("tau")) {
            theta = theta_from_tau(family, entry.at("tau").get<double>());
        } else {
            throw std::invalid_argument("generator entry needs 'theta' or 'tau'");
        }
        const Generator gen{family, theta};
        validate_generator(gen);
        if (!model.generators.emplace(mask, gen).second) {
            throw std::invalid_argument("duplicate generator for one branching node");
        }
    }
    validate_model(model);
    return model;
}

json decision_to_json(const TripleDecision& d, const std::vector<std::string>& labels) {
    json j;
    j["schema"] = 1;
    json triple = json::array();
    for (int idx : d.triple.idx) triple.push_back(labels.at(static_cast<std::size_t>(idx)));
    j["triple"] = std::move(triple);
    json distances;
    for (int m = 0; m < 3; ++m) {
        distances["shared_" + labels.at(static_cast<std::size_t>(d.triple.idx[m]))] = d.deltas[m];
    }
    j["distances"] = std::move(distances);
    j["statistic"] = d.statistic;
    j["p_value"] = d.p_value;
    j["bootstrap"] = d.bootstrap_statistics.size();
    if (d.candidate.fan) {
        j["candidate"] = {{"type", "fan"}};
    } else {
        j["candidate"] = {
            {"type", "inner"},
            {"pair",
             json::array({labels.at(static_cast<std::size_t>(d.triple.idx[d.candidate.inner[0]])),
                          labels.at(static_cast<std::size_t>(d.triple.idx[d.candidate.inner[1]]))})}};
    }
    j["tie"] = d.candidate.tie;
    return j;
}

json estimate_to_json(const EstimateResult& r, const std::vector<std::string>& labels) {
    json j;
    j["schema"] = 1;
    j["alpha0"] = r.alpha0;
    j["chosen_alpha"] = r.chosen_alpha;
    j["faulty_alphas"] = r.faulty_alphas;
    j["tree"] = tree_to_json(r.tree);
    j["tree_text"] = format_tree(r.tree);
    json triples = json::array();
    for (const TripleDecision& d : r.decisions) triples.push_back(decision_to_json(d, labels));
    j["triples"] = std::move(triples);
    return j;
}

ExperimentConfig experiment_from_json(const json& j) {
    return ExperimentConfig{
        model_from_json(j.contains("model") ? j.at("model") : j),
        j.at("sample_sizes").get<std::vector<std::size_t>>(),
        j.at("replications").get<int>(),
        j.contains("alpha") ? j.at("alpha").get<double>() : 0.10,
        j.contains("bootstrap") ? j.at("bootstrap").get<int>() : 200,
        j.at("seed").get<std::uint64_t>()};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << j.dump(2) << '\n';
}

}  // namespace nacest
