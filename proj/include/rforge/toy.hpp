// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rforge/evaluation.hpp"
#include "rforge/manifest.hpp"
#include "rforge/rebalance.hpp"

// Desk-scale stand-ins for the image pipeline: Gaussian-blob datasets, a
// per-class diagonal Gaussian as the synthetic-image generator and a
// multinomial logistic regression as the classifier.

namespace rforge::toy {

struct ToyDatasetConfig {
    /// Label -> record count, in label order.
    std::vector<std::pair<std::string, std::size_t>> counts;
    std::size_t feature_dim = 8;
    /// Distance of each class mean from the origin along its own axis.
    double separation = 1.5;
    std::uint64_t seed = 0;

    void validate() const;
    /// Counts proportional to the 21,165-image chest X-ray dataset, scaled 1:10.
    static ToyDatasetConfig cxr_scaled();
};

struct FeatureRecord {
    std::string id;
    std::string label;
    Source source = Source::real;
    std::vector<double> features;
};

using Dataset = std::vector<FeatureRecord>;

/// Class c has mean separation * e_(c mod dim) and unit variance.
Dataset generate_toy_dataset(const ToyDatasetConfig& config);

Manifest to_manifest(const Dataset& records);

/// CSV `id,label,source,f0,f1,...`.
void save_features_csv(const Dataset& records, const std::filesystem::path& path);
Dataset load_features_csv(const std::filesystem::path& path);

inline constexpr double kVarianceFloor = 1e-9;

struct GaussianSynthesizer {
    std::string label;
    std::vector<double> mean;
    /// Unbiased sample variance, floored at kVarianceFloor.
    std::vector<double> variance;
};

/// Fits on the real records of `label`; needs at least two.
GaussianSynthesizer fit_synthesizer(const Dataset& records, const std::string& label);

/// n synthetic records with ids "<prefix>-<i>".
Dataset sample_synthetic(const GaussianSynthesizer& synth, std::size_t n, std::uint64_t seed,
                         const std::string& id_prefix = "syn");

struct Hyperparameters {
    double learning_rate = 1e-4;
    double dropout_rate = 0.15;
    double siir = 0.0;

    void validate() const;
    /// Values the hyperparameter search settled on at full scale.
    static Hyperparameters optimized_reference();
};

struct TrainingOptions {
    std::size_t epochs = 15;
    std::size_t batch_size = 128;
    std::uint64_t seed = 0;
};

/// Softmax regression over dense features.
class LogisticModel {
public:
    LogisticModel() = default;
    LogisticModel(std::vector<std::string> labels, std::size_t dim);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Class probabilities into `out` (size = labels().size()).
    void probabilities(const std::vector<double>& x, std::vector<double>& out) const;
    std::size_t predict_index(const std::vector<double>& x) const;
    const std::string& predict(const std::vector<double>& x) const;

    std::vector<double>& weights() noexcept { return weights_; }
    std::vector<double>& bias() noexcept { return bias_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& bias() const noexcept { return bias_; }

private:
    std::vector<std::string> labels_;
    std::size_t dim_ = 0;
    std::vector<double> weights_;  // labels x dim, row-major
    std::vector<double> bias_;
};

/// Mean cross-entropy of `model` over `records`.
double cross_entropy(const LogisticModel& model, const Dataset& records);

struct TrainResult {
    /// +infinity when training diverged.
    double val_loss = 0.0;
    LogisticModel model;
    bool diverged = false;
    std::vector<std::string> warnings;
};

/// Seeded mini-batch gradient descent from zero weights, with inverted
/// dropout on the inputs during training. Labels are taken from `train` in
/// first-appearance order; every `val` label must appear in `train`.
TrainResult train_classifier(const Dataset& train, const Dataset& val, const Hyperparameters& hp,
                             std::size_t epochs, std::size_t batch_size, std::uint64_t seed);

/// Real records of one fold, resolved from ids.
struct FoldSplit {
    Dataset train;
    Dataset val;
    Dataset test;
};

/// Throws rforge::Error if an id is unknown or a synthetic record is in test.
FoldSplit resolve_fold(const Dataset& dataset, const evaluation::Fold& fold);

struct InjectedSplit {
    Dataset train;
    Dataset val;
    rebalance::InjectionPlan plan;
};

/// Plans injection on the fold's real train+val records at `siir`, fits one
/// synthesizer per label on those records, samples the planned counts and
/// splits them into train/val at `val_ratio`. Test records are untouched.
InjectedSplit inject_synthetic(const FoldSplit& split, double siir, double val_ratio, std::uint64_t seed);

struct ObjectiveOptions {
    TrainingOptions training;
    double val_ratio = evaluation::kDefaultValRatio;
};

/// inject at hp.siir -> train -> validation loss. Deterministic in its inputs.
double pipeline_objective(const FoldSplit& split, const Hyperparameters& hp, const ObjectiveOptions& options);
double pipeline_objective(const Dataset& dataset, const evaluation::Fold& fold, const Hyperparameters& hp,
                          const ObjectiveOptions& options);

}  // namespace rforge::toy
