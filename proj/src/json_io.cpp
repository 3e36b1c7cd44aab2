// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/json_io.hpp"

#include <fstream>
#include <system_error>

#include "rforge/error.hpp"

namespace rforge::json_io {

namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : it->template get<T>();
}

Json shape_to_json(const progan::TensorShape& s) { return Json::array({s.channels, s.height, s.width}); }

progan::TensorShape shape_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw Error("shape must be a [c, h, w] array");
    return {j[0].get<long>(), j[1].get<long>(), j[2].get<long>()};
}

Json matrix_to_json(const std::vector<double>& flat, std::size_t n) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(flat[i * n + j]);
        rows.push_back(std::move(row));
    }
    return rows;
}

Json metrics_to_json(const evaluation::MetricsReport& r) {
    Json j = Json::object();
    const auto values = evaluation::metric_values(r);
    for (std::size_t m = 0; m < values.size(); ++m) j[std::string(evaluation::kMetricNames[m])] = values[m];
    if (!r.flags.empty()) j["flags"] = r.flags;
    return j;
}

}  // namespace

Json injection_plan_to_json(const rebalance::InjectionPlan& plan, const rebalance::WeightTable* weights,
                            const rebalance::CfTable* cf) {
    Json j = Json::object();
    j["siir"] = plan.siir;
    j["n_f_total"] = plan.n_f_total;
    Json per_label = Json::object();
    for (std::size_t i = 0; i < plan.labels.size(); ++i) per_label[plan.labels[i]] = plan.per_label[i];
    j["per_label"] = per_label;
    if (weights) {
        Json w = Json::object();
        for (std::size_t i = 0; i < weights->labels.size(); ++i) w[weights->labels[i]] = weights->weight[i];
        j["weights"] = w;
    }
    if (cf) {
        Json c = Json::object();
        for (std::size_t i = 0; i < cf->labels.size(); ++i) c[cf->labels[i]] = cf->cf[i];
        j["cf"] = c;
    }
    return j;
}

rebalance::InjectionPlan injection_plan_from_json(const Json& j) {
    try {
        rebalance::InjectionPlan plan;
        plan.siir = j.at("siir").get<double>();
        plan.n_f_total = j.at("n_f_total").get<std::uint64_t>();
        for (const auto& [label, n] : j.at("per_label").items()) {
            plan.labels.push_back(label);
            plan.per_label.push_back(n.get<std::uint64_t>());
        }
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid injection plan: ") + e.what());
    }
}

Json fold_plan_to_json(const evaluation::FoldPlan& plan) {
    Json j = Json::object();
    j["k"] = plan.k;
    j["val_ratio"] = plan.val_ratio;
    j["seed"] = plan.seed;
    Json folds = Json::array();
    for (const auto& f : plan.folds) {
        Json fold = Json::object();
        fold["test"] = f.test;
        fold["train"] = f.train;
        fold["val"] = f.val;
        folds.push_back(std::move(fold));
    }
    j["folds"] = std::move(folds);
    return j;
}

evaluation::FoldPlan fold_plan_from_json(const Json& j) {
    try {
        evaluation::FoldPlan plan;
        plan.k = j.at("k").get<std::size_t>();
        plan.val_ratio = j.at("val_ratio").get<double>();
        plan.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& f : j.at("folds")) {
            plan.folds.push_back({f.at("test").get<std::vector<std::string>>(),
                                  f.at("train").get<std::vector<std::string>>(),
                                  f.at("val").get<std::vector<std::string>>()});
        }
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid fold plan: ") + e.what());
    }
}

Json summary_to_json(const evaluation::CrossValSummary& summary) {
    Json j = Json::object();
    for (std::size_t m = 0; m < evaluation::kMetricNames.size(); ++m) {
        j[std::string(evaluation::kMetricNames[m])] = {{"mean", summary.metrics[m].mean},
                                                       {"std", summary.metrics[m].std}};
    }
    j["labels"] = summary.labels;
    j["averaged_confusion"] = matrix_to_json(summary.averaged_matrix, summary.labels.size());
    j["normalized_confusion"] = matrix_to_json(summary.normalized_matrix, summary.labels.size());
    Json folds = Json::array();
    for (const auto& r : summary.fold_reports) folds.push_back(metrics_to_json(r));
    j["folds"] = std::move(folds);
    return j;
}

Json network_to_json(const progan::NetworkSpec& spec) {
    Json j = Json::object();
    j["name"] = spec.name;
    j["stage"] = spec.stage;
    j["input_shape"] = shape_to_json(spec.input_shape);
    if (spec.verbatim) j["verbatim"] = true;
    Json layers = Json::array();
    for (const auto& l : spec.layers) {
        Json layer = Json::object();
        layer["kind"] = std::string(progan::to_string(l.kind));
        if (progan::is_conv(l.kind)) {
            layer["k"] = l.kernel;
            layer["p"] = l.padding;
            layer["s"] = l.stride;
            layer["out_channels"] = l.out_channels;
        }
        layer["activation"] = std::string(progan::to_string(l.activation));
        if (l.declared_input) layer["declared_input"] = shape_to_json(*l.declared_input);
        if (l.declared_output) layer["declared_output"] = shape_to_json(*l.declared_output);
        layers.push_back(std::move(layer));
    }
    j["layers"] = std::move(layers);
    return j;
}

progan::NetworkSpec network_from_json(const Json& j) {
    try {
        progan::NetworkSpec spec;
        spec.name = get_or<std::string>(j, "name", "network");
        spec.stage = get_or<int>(j, "stage", 6);
        spec.input_shape = shape_from_json(j.at("input_shape"));
        spec.verbatim = get_or<bool>(j, "verbatim", false);
        const auto& layers = j.at("layers");
        if (!layers.is_array() || layers.empty()) throw Error("network spec needs a non-empty 'layers' array");
        for (std::size_t i = 0; i < layers.size(); ++i) {
            const auto& l = layers[i];
            const auto kind_name = l.at("kind").get<std::string>();
            const auto kind = progan::parse_layer_kind(kind_name);
            if (!kind) throw Error("layer " + std::to_string(i) + ": unknown kind '" + kind_name + "'");
            progan::LayerSpec layer = progan::LayerSpec::simple(*kind);
            if (*kind == progan::LayerKind::ToRGB) layer = progan::LayerSpec::to_rgb();
            layer.kernel = get_or<long>(l, "k", layer.kernel);
            layer.padding = get_or<long>(l, "p", layer.padding);
            layer.stride = get_or<long>(l, "s", layer.stride);
            layer.out_channels = get_or<long>(l, "out_channels", layer.out_channels);
            const auto act_name = get_or<std::string>(l, "activation", std::string(progan::to_string(layer.activation)));
            const auto act = progan::parse_activation(act_name);
            if (!act) throw Error("layer " + std::to_string(i) + ": unknown activation '" + act_name + "'");
            layer.activation = *act;
            if (l.contains("declared_input")) layer.declared_input = shape_from_json(l["declared_input"]);
            if (l.contains("declared_output")) layer.declared_output = shape_from_json(l["declared_output"]);
            spec.layers.push_back(layer);
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid network spec: ") + e.what());
    }
}

sma::SmaConfig sma_config_from_json(const Json& j, sma::SmaConfig base) {
    try {
        base.population_size = get_or<std::size_t>(j, "population_size", base.population_size);
        base.epochs = get_or<std::size_t>(j, "epochs", base.epochs);
        base.lower_bounds = get_or<std::vector<double>>(j, "lower_bounds", base.lower_bounds);
        base.upper_bounds = get_or<std::vector<double>>(j, "upper_bounds", base.upper_bounds);
        if (j.contains("scales")) {
            base.scales.clear();
            for (const auto& s : j["scales"]) {
                const auto name = s.get<std::string>();
                if (name == "linear") {
                    base.scales.push_back(sma::Scale::linear);
                } else if (name == "log") {
                    base.scales.push_back(sma::Scale::log);
                } else {
                    throw Error("unknown scale '" + name + "' (expected linear or log)");
                }
            }
        } else if (j.contains("lower_bounds") && base.scales.size() != base.lower_bounds.size()) {
            base.scales.clear();
        }
        base.z = get_or<double>(j, "z", base.z);
        base.seed = get_or<std::uint64_t>(j, "seed", base.seed);
        base.threads = get_or<std::size_t>(j, "threads", base.threads);
        return base;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid optimizer config: ") + e.what());
    }
}

Json sma_config_to_json(const sma::SmaConfig& config) {
    Json j = Json::object();
    j["population_size"] = config.population_size;
    j["epochs"] = config.epochs;
    j["lower_bounds"] = config.lower_bounds;
    j["upper_bounds"] = config.upper_bounds;
    Json scales = Json::array();
    for (std::size_t d = 0; d < config.dimensions(); ++d) {
        scales.push_back(config.scale(d) == sma::Scale::log ? "log" : "linear");
    }
    j["scales"] = std::move(scales);
    j["z"] = config.z;
    j["seed"] = config.seed;
    j["threads"] = config.threads;
    return j;
}

Json optimization_result_to_json(const sma::OptimizationResult& result) {
    Json j = Json::object();
    j["best_position"] = result.best_position;
    j["best_fitness"] = result.best_fitness;
    j["history"] = result.history;
    j["evaluations"] = result.evaluations;
    j["non_finite_evaluations"] = result.non_finite_evaluations;
    j["warnings"] = result.warnings;
    return j;
}

pipeline::ToyRunConfig toy_config_from_json(const Json& j) {
    try {
        pipeline::ToyRunConfig config;
        if (j.contains("dataset")) {
            const auto& d = j["dataset"];
            if (d.contains("counts")) {
                config.dataset.counts.clear();
                for (const auto& [label, n] : d["counts"].items()) {
                    config.dataset.counts.emplace_back(label, n.get<std::size_t>());
                }
            }
            config.dataset.feature_dim = get_or<std::size_t>(d, "feature_dim", config.dataset.feature_dim);
            config.dataset.separation = get_or<double>(d, "separation", config.dataset.separation);
        }
        config.k = get_or<std::size_t>(j, "k", config.k);
        config.val_ratio = get_or<double>(j, "val_ratio", config.val_ratio);
        if (j.contains("search")) config.search = sma_config_from_json(j["search"], config.search);
        if (j.contains("training")) {
            config.training.epochs = get_or<std::size_t>(j["training"], "epochs", config.training.epochs);
            config.training.batch_size = get_or<std::size_t>(j["training"], "batch_size", config.training.batch_size);
        }
        if (j.contains("baseline")) {
            const auto& b = j["baseline"];
            config.baseline.learning_rate = get_or<double>(b, "learning_rate", config.baseline.learning_rate);
            config.baseline.dropout_rate = get_or<double>(b, "dropout_rate", config.baseline.dropout_rate);
            config.baseline.siir = get_or<double>(b, "siir", config.baseline.siir);
        }
        config.search_fold = get_or<std::size_t>(j, "search_fold", config.search_fold);
        config.seed = get_or<std::uint64_t>(j, "seed", config.seed);
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid toy config: ") + e.what());
    }
}

Json toy_config_to_json(const pipeline::ToyRunConfig& config) {
    Json counts = Json::object();
    for (const auto& [label, n] : config.dataset.counts) counts[label] = n;
    Json j = Json::object();
    j["dataset"] = {{"counts", counts},
                    {"feature_dim", config.dataset.feature_dim},
                    {"separation", config.dataset.separation}};
    j["k"] = config.k;
    j["val_ratio"] = config.val_ratio;
    Json search = sma_config_to_json(config.search);
    search.erase("seed");
    j["search"] = std::move(search);
    j["training"] = {{"epochs", config.training.epochs}, {"batch_size", config.training.batch_size}};
    j["baseline"] = {{"learning_rate", config.baseline.learning_rate},
                     {"dropout_rate", config.baseline.dropout_rate},
                     {"siir", config.baseline.siir}};
    j["search_fold"] = config.search_fold;
    j["seed"] = config.seed;
    return j;
}

Json toy_report_to_json(const pipeline::ToyRunReport& report) {
    Json j = Json::object();
    j["records"] = report.records;
    j["best_hyperparameters"] = {{"learning_rate", report.best.learning_rate},
                                 {"dropout_rate", report.best.dropout_rate},
                                 {"siir", report.best.siir}};
    j["search"] = optimization_result_to_json(report.search);
    j["injection_plan"] = injection_plan_to_json(report.plan, nullptr, nullptr);
    j["tuned"] = summary_to_json(report.tuned);
    j["baseline"] = summary_to_json(report.baseline);
    return j;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json_atomic(const Json& j, const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + path.string() + "'");
        out << j.dump(2) << '\n';
        if (!out) throw Error("failed writing '" + path.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into '" + path.string() + "'");
    }
}

}  // namespace rforge::json_io
