// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rforge/manifest.hpp"
#include "rforge/rebalance.hpp"

namespace rforge::evaluation {

inline constexpr double kDefaultValRatio = 0.15;
inline constexpr std::size_t kDefaultFolds = 10;

struct Fold {
    std::vector<std::string> test;
    std::vector<std::string> train;
    std::vector<std::string> val;
};

struct FoldPlan {
    std::size_t k = 0;
    double val_ratio = kDefaultValRatio;
    std::uint64_t seed = 0;
    std::vector<Fold> folds;
};

/// Stratified k-fold plan. Real records are shuffled within each label and
/// dealt round-robin into test folds (the dealing position carries over from
/// one label to the next, so fold sizes also differ by at most one). Per fold,
/// the remaining real records and every synthetic record are split so that
/// |val| = round(val_ratio * (|train| + |val|)), apportioned across
/// (label, source) groups. Synthetic records never enter a test fold.
///
/// When `plan` is given, the manifest's per-label synthetic counts must match it.
FoldPlan plan_folds(const Manifest& manifest, std::size_t k, double val_ratio, std::uint64_t seed,
                    const std::optional<rebalance::InjectionPlan>& plan = std::nullopt);

/// Splits `group_sizes` items into validation counts summing to
/// round(val_ratio * total) by largest remainder.
std::vector<std::uint64_t> validation_counts(const std::vector<std::uint64_t>& group_sizes, double val_ratio);

/// Rows = true label, columns = predicted label.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::vector<std::string> labels);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    std::uint64_t at(std::size_t truth, std::size_t predicted) const { return counts_[truth * size() + predicted]; }
    std::uint64_t& at(std::size_t truth, std::size_t predicted) { return counts_[truth * size() + predicted]; }
    std::uint64_t total() const noexcept;
    std::uint64_t row_sum(std::size_t truth) const;

private:
    std::vector<std::string> labels_;
    std::vector<std::uint64_t> counts_;
};

ConfusionMatrix confusion_matrix(const std::vector<std::string>& truths, const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& labels);

/// Macro-averaged one-vs-rest metrics; accuracy is trace / total.
struct MetricsReport {
    double recall = 0.0;
    double specificity = 0.0;
    double f1 = 0.0;
    double precision = 0.0;
    double accuracy = 0.0;
    /// "<label>: <metric> undefined" for every per-class 0/0 that was scored 0.
    std::vector<std::string> flags;
};

inline constexpr std::array<std::string_view, 5> kMetricNames{"recall", "specificity", "f1", "precision",
                                                              "accuracy"};

std::array<double, 5> metric_values(const MetricsReport& report) noexcept;

MetricsReport metrics_from_confusion(const ConfusionMatrix& cm);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

struct CrossValSummary {
    std::vector<std::string> labels;
    /// Indexed like kMetricNames; std is the population standard deviation.
    std::array<MeanStd, 5> metrics{};
    std::vector<MetricsReport> fold_reports;
    /// Row-major, labels x labels.
    std::vector<double> averaged_matrix;
    /// averaged_matrix with each row divided by its sum; zero rows stay zero.
    std::vector<double> normalized_matrix;

    const MeanStd& metric(std::string_view name) const;
};

CrossValSummary aggregate_folds(const std::vector<MetricsReport>& reports,
                                const std::vector<ConfusionMatrix>& matrices);

}  // namespace rforge::evaluation
