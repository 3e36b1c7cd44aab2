// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rforge/evaluation.hpp"
#include "rforge/sma.hpp"
#include "rforge/toy.hpp"

// End-to-end desk-scale run: generate (or load) a dataset, plan stratified
// folds, search hyperparameters on one fold's train/val split, then
// cross-validate both the tuned model (with injection) and a no-injection
// baseline on the real-only test folds.

namespace rforge::pipeline {

struct ToyRunConfig {
    toy::ToyDatasetConfig dataset = toy::ToyDatasetConfig::cxr_scaled();
    std::size_t k = evaluation::kDefaultFolds;
    double val_ratio = evaluation::kDefaultValRatio;
    /// Search box, scales and budget; seed is overwritten from `seed`.
    sma::SmaConfig search = default_search();
    toy::TrainingOptions training;
    toy::Hyperparameters baseline{1e-4, 0.15, 0.0};
    /// Fold whose train/val split drives the hyperparameter search.
    std::size_t search_fold = 0;
    std::uint64_t seed = 0;

    void validate() const;
    /// Hyperparameter box with a budget sized for a laptop (15 x 40).
    static sma::SmaConfig default_search();
};

struct ToyRunReport {
    toy::Hyperparameters best;
    sma::OptimizationResult search;
    evaluation::CrossValSummary tuned;
    evaluation::CrossValSummary baseline;
    /// Injection plan over the whole real dataset at the tuned ratio.
    rebalance::InjectionPlan plan;
    std::size_t records = 0;
};

/// Trains on each fold (with injection at hp.siir) and scores the real test split.
evaluation::CrossValSummary cross_validate(const toy::Dataset& dataset, const evaluation::FoldPlan& folds,
                                           const toy::Hyperparameters& hp, const toy::ObjectiveOptions& options);

/// `dataset` overrides generation from config.dataset when given.
ToyRunReport run_toy(const ToyRunConfig& config, const std::optional<toy::Dataset>& dataset = std::nullopt);

}  // namespace rforge::pipeline
