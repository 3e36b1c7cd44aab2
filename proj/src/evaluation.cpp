// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "rforge/error.hpp"
#include "rforge/random.hpp"

namespace rforge::evaluation {

std::vector<std::uint64_t> validation_counts(const std::vector<std::uint64_t>& group_sizes, double val_ratio) {
    std::uint64_t total = 0;
    std::vector<double> quotas;
    quotas.reserve(group_sizes.size());
    for (auto n : group_sizes) {
        total += n;
        quotas.push_back(val_ratio * static_cast<double>(n));
    }
    if (total == 0) return std::vector<std::uint64_t>(group_sizes.size(), 0);
    const auto target = static_cast<std::uint64_t>(std::llround(val_ratio * static_cast<double>(total)));
    return rebalance::largest_remainder(quotas, target);
}

FoldPlan plan_folds(const Manifest& manifest, std::size_t k, double val_ratio, std::uint64_t seed,
                    const std::optional<rebalance::InjectionPlan>& plan) {
    if (k < 2) throw Error("k must be >= 2");
    if (!(val_ratio > 0.0 && val_ratio < 1.0)) throw Error("val_ratio must lie in (0, 1)");

    const auto& labels = manifest.label_set();
    const auto& records = manifest.records();
    const std::size_t n_labels = labels.size();

    // groups[label][source] -> record indices in manifest order
    std::vector<std::array<std::vector<std::size_t>, 2>> groups(n_labels);
    {
        std::unordered_map<std::string_view, std::size_t> index;
        for (std::size_t i = 0; i < n_labels; ++i) index.emplace(labels[i], i);
        for (std::size_t r = 0; r < records.size(); ++r) {
            const auto src = records[r].source == Source::real ? 0 : 1;
            groups[index.at(records[r].label)][static_cast<std::size_t>(src)].push_back(r);
        }
    }
    for (std::size_t l = 0; l < n_labels; ++l) {
        if (groups[l][0].size() < k) {
            throw Error("label '" + labels[l] + "' has " + std::to_string(groups[l][0].size()) +
                        " real records, fewer than k = " + std::to_string(k));
        }
    }
    if (plan) {
        for (std::size_t l = 0; l < n_labels; ++l) {
            const auto it = std::find(plan->labels.begin(), plan->labels.end(), labels[l]);
            const std::uint64_t expected =
                it == plan->labels.end() ? 0 : plan->per_label[static_cast<std::size_t>(it - plan->labels.begin())];
            if (groups[l][1].size() != expected) {
                throw Error("label '" + labels[l] + "' has " + std::to_string(groups[l][1].size()) +
                            " synthetic records but the injection plan calls for " + std::to_string(expected));
            }
        }
    }

    // Stratified round-robin test assignment.
    std::vector<std::size_t> test_fold(records.size(), k);
    std::mt19937_64 engine(seed);
    std::size_t cursor = 0;
    for (std::size_t l = 0; l < n_labels; ++l) {
        auto shuffled = groups[l][0];
        std::shuffle(shuffled.begin(), shuffled.end(), engine);
        for (auto r : shuffled) {
            test_fold[r] = cursor % k;
            ++cursor;
        }
    }

    FoldPlan result;
    result.k = k;
    result.val_ratio = val_ratio;
    result.seed = seed;
    result.folds.resize(k);
    for (std::size_t f = 0; f < k; ++f) {
        std::mt19937_64 fold_engine(derive_seed(seed, f));
        std::vector<std::vector<std::size_t>> pools;
        std::vector<std::uint64_t> sizes;
        for (std::size_t l = 0; l < n_labels; ++l) {
            std::vector<std::size_t> remaining_real;
            for (auto r : groups[l][0]) {
                if (test_fold[r] != f) remaining_real.push_back(r);
            }
            sizes.push_back(remaining_real.size());
            pools.push_back(std::move(remaining_real));
            sizes.push_back(groups[l][1].size());
            pools.push_back(groups[l][1]);
        }
        const auto val_counts = validation_counts(sizes, val_ratio);

        std::vector<char> is_val(records.size(), 0);
        for (std::size_t g = 0; g < pools.size(); ++g) {
            auto pool = pools[g];
            std::shuffle(pool.begin(), pool.end(), fold_engine);
            for (std::size_t j = 0; j < val_counts[g]; ++j) is_val[pool[j]] = 1;
        }

        auto& fold = result.folds[f];
        for (std::size_t r = 0; r < records.size(); ++r) {
            const auto& id = records[r].id;
            if (test_fold[r] == f) {
                fold.test.push_back(id);
            } else if (is_val[r]) {
                fold.val.push_back(id);
            } else {
                fold.train.push_back(id);
            }
        }
    }
    return result;
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {}

std::uint64_t ConfusionMatrix::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < size(); ++j) sum += at(truth, j);
    return sum;
}

ConfusionMatrix confusion_matrix(const std::vector<std::string>& truths, const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& labels) {
    if (truths.size() != predictions.size()) {
        throw Error("truths and predictions differ in length (" + std::to_string(truths.size()) + " vs " +
                    std::to_string(predictions.size()) + ")");
    }
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!index.emplace(labels[i], i).second) throw Error("duplicate label '" + labels[i] + "'");
    }
    const auto lookup = [&](const std::string& label) {
        const auto it = index.find(label);
        if (it == index.end()) throw Error("unknown label '" + label + "'");
        return it->second;
    };
    ConfusionMatrix cm(labels);
    for (std::size_t t = 0; t < truths.size(); ++t) {
        ++cm.at(lookup(truths[t]), lookup(predictions[t]));
    }
    return cm;
}

std::array<double, 5> metric_values(const MetricsReport& report) noexcept {
    return {report.recall, report.specificity, report.f1, report.precision, report.accuracy};
}

MetricsReport metrics_from_confusion(const ConfusionMatrix& cm) {
    const std::size_t n = cm.size();
    const std::uint64_t total = cm.total();
    if (n == 0 || total == 0) throw Error("confusion matrix is empty");

    MetricsReport report;
    const auto ratio = [&](std::uint64_t num, std::uint64_t den, const std::string& label, const char* metric) {
        if (den == 0) {
            report.flags.push_back(label + ": " + metric + " undefined");
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };

    std::uint64_t trace = 0;
    for (std::size_t c = 0; c < n; ++c) {
        const std::uint64_t tp = cm.at(c, c);
        std::uint64_t fn = 0;
        std::uint64_t fp = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == c) continue;
            fn += cm.at(c, j);
            fp += cm.at(j, c);
        }
        const std::uint64_t tn = total - tp - fn - fp;
        trace += tp;

        const auto& label = cm.labels()[c];
        const double recall = ratio(tp, tp + fn, label, "recall");
        const double specificity = ratio(tn, tn + fp, label, "specificity");
        const double precision = ratio(tp, tp + fp, label, "precision");
        double f1 = 0.0;
        if (precision + recall > 0.0) {
            f1 = 2.0 * precision * recall / (precision + recall);
        } else {
            report.flags.push_back(label + ": f1 undefined");
        }
        report.recall += recall;
        report.specificity += specificity;
        report.precision += precision;
        report.f1 += f1;
    }
    const auto classes = static_cast<double>(n);
    report.recall /= classes;
    report.specificity /= classes;
    report.precision /= classes;
    report.f1 /= classes;
    report.accuracy = static_cast<double>(trace) / static_cast<double>(total);
    return report;
}

const MeanStd& CrossValSummary::metric(std::string_view name) const {
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
        if (kMetricNames[i] == name) return metrics[i];
    }
    throw Error("unknown metric '" + std::string(name) + "'");
}

CrossValSummary aggregate_folds(const std::vector<MetricsReport>& reports,
                                const std::vector<ConfusionMatrix>& matrices) {
    if (reports.empty()) throw Error("no fold reports to aggregate");
    CrossValSummary summary;
    summary.fold_reports = reports;

    const auto k = static_cast<double>(reports.size());
    for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
        double sum = 0.0;
        for (const auto& r : reports) sum += metric_values(r)[m];
        const double mean = sum / k;
        double sq = 0.0;
        for (const auto& r : reports) {
            const double d = metric_values(r)[m] - mean;
            sq += d * d;
        }
        summary.metrics[m] = {mean, std::sqrt(sq / k)};
    }

    if (!matrices.empty()) {
        summary.labels = matrices.front().labels();
        const std::size_t n = summary.labels.size();
        summary.averaged_matrix.assign(n * n, 0.0);
        for (const auto& cm : matrices) {
            if (cm.labels() != summary.labels) throw Error("confusion matrices have mismatched label orders");
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    summary.averaged_matrix[i * n + j] += static_cast<double>(cm.at(i, j));
                }
            }
        }
        for (auto& v : summary.averaged_matrix) v /= static_cast<double>(matrices.size());
        summary.normalized_matrix.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += summary.averaged_matrix[i * n + j];
            if (row == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                summary.normalized_matrix[i * n + j] = summary.averaged_matrix[i * n + j] / row;
            }
        }
    }
    return summary;
}

}  // namespace rforge::evaluation
