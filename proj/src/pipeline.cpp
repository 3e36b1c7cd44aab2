// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/pipeline.hpp"

#include "rforge/error.hpp"
#include "rforge/random.hpp"

namespace rforge::pipeline {

sma::SmaConfig ToyRunConfig::default_search() {
    auto config = sma::SmaConfig::hyperparameter_defaults();
    config.epochs = 40;
    return config;
}

void ToyRunConfig::validate() const {
    dataset.validate();
    search.validate();
    baseline.validate();
    if (search.dimensions() != 3) throw Error("search box must have 3 dimensions (learning rate, dropout, siir)");
    if (k < 2) throw Error("k must be >= 2");
    if (search_fold >= k) throw Error("search_fold must be below k");
    if (training.epochs < 1 || training.batch_size < 1) throw Error("training epochs and batch size must be positive");
}

evaluation::CrossValSummary cross_validate(const toy::Dataset& dataset, const evaluation::FoldPlan& folds,
                                           const toy::Hyperparameters& hp, const toy::ObjectiveOptions& options) {
    std::vector<evaluation::MetricsReport> reports;
    std::vector<evaluation::ConfusionMatrix> matrices;
    const auto labels = to_manifest(dataset).label_set();
    for (std::size_t f = 0; f < folds.folds.size(); ++f) {
        const auto split = toy::resolve_fold(dataset, folds.folds[f]);
        const std::uint64_t fold_seed = derive_seed(options.training.seed, f);
        const auto injected = toy::inject_synthetic(split, hp.siir, options.val_ratio, fold_seed);
        const auto trained = toy::train_classifier(injected.train, injected.val, hp, options.training.epochs,
                                                   options.training.batch_size, fold_seed);
        std::vector<std::string> truths;
        std::vector<std::string> predictions;
        for (const auto& r : split.test) {
            truths.push_back(r.label);
            predictions.push_back(trained.model.predict(r.features));
        }
        auto cm = evaluation::confusion_matrix(truths, predictions, labels);
        reports.push_back(evaluation::metrics_from_confusion(cm));
        matrices.push_back(std::move(cm));
    }
    return evaluation::aggregate_folds(reports, matrices);
}

ToyRunReport run_toy(const ToyRunConfig& config, const std::optional<toy::Dataset>& dataset) {
    config.validate();
    auto generation = config.dataset;
    generation.seed = derive_seed(config.seed, 0);
    const toy::Dataset data = dataset ? *dataset : toy::generate_toy_dataset(generation);

    toy::Dataset real;
    for (const auto& r : data) {
        if (r.source == Source::real) real.push_back(r);
    }
    const Manifest manifest = toy::to_manifest(real);
    const auto folds = evaluation::plan_folds(manifest, config.k, config.val_ratio, derive_seed(config.seed, 1));

    toy::ObjectiveOptions options{config.training, config.val_ratio};
    options.training.seed = derive_seed(config.seed, 2);
    const auto search_split = toy::resolve_fold(real, folds.folds[config.search_fold]);
    const sma::Objective objective = [&](std::span<const double> x) {
        return toy::pipeline_objective(search_split, {x[0], x[1], x[2]}, options);
    };
    auto search = config.search;
    search.seed = derive_seed(config.seed, 3);

    ToyRunReport report;
    report.records = real.size();
    report.search = sma::optimize(objective, search);
    report.best = {report.search.best_position[0], report.search.best_position[1], report.search.best_position[2]};
    report.tuned = cross_validate(real, folds, report.best, options);
    report.baseline = cross_validate(real, folds, config.baseline, options);
    report.plan = rebalance::plan_for(compute_label_stats(manifest, Source::real), {report.best.siir, {}});
    return report;
}

}  // namespace rforge::pipeline
