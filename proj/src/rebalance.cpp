// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/rebalance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rforge/error.hpp"

namespace rforge::rebalance {

double InjectionConfig::tuning_for(const std::string& label) const {
    const auto it = tuning.find(label);
    return it == tuning.end() ? 1.0 : it->second;
}

void InjectionConfig::validate() const {
    if (!(siir >= 0.0)) throw Error("siir must be non-negative");
    if (!(siir < 1.0)) throw Error("ratio must be below one");
    for (const auto& [label, a] : tuning) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw Error("tuning factor for '" + label + "' must be positive");
        }
    }
}

std::uint64_t InjectionPlan::count_for(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error("unknown label '" + label + "'");
    return per_label[static_cast<std::size_t>(it - labels.begin())];
}

CfTable complementary_frequencies(const LabelStats& stats) {
    if (stats.labels.empty()) throw Error("label statistics are empty");
    const auto max_it = std::max_element(stats.frequency.begin(), stats.frequency.end());
    const auto ref = static_cast<std::size_t>(max_it - stats.frequency.begin());

    CfTable table;
    table.labels = stats.labels;
    table.reference_label = stats.labels[ref];
    table.cf.reserve(stats.frequency.size());
    for (auto n : stats.frequency) {
        const std::uint64_t gap = *max_it - n;
        table.cf.push_back(gap);
        table.total_cf += gap;
    }
    return table;
}

WeightTable injection_weights(const CfTable& cf, const InjectionConfig& config) {
    config.validate();
    if (cf.total_cf == 0) throw Error("nothing to inject");
    WeightTable table;
    table.labels = cf.labels;
    table.weight.reserve(cf.cf.size());
    const auto total = static_cast<double>(cf.total_cf);
    for (std::size_t i = 0; i < cf.labels.size(); ++i) {
        const double a = config.tuning_for(cf.labels[i]);
        if (a != 1.0) table.untuned = false;
        table.weight.push_back(static_cast<double>(cf.cf[i]) / total * a);
    }
    return table;
}

std::uint64_t total_synthetic_count(double siir, std::uint64_t n_real) {
    if (!(siir < 1.0)) throw Error("ratio must be below one");
    if (!(siir >= 0.0)) throw Error("siir must be non-negative");
    const double exact = siir * static_cast<double>(n_real) / (1.0 - siir);
    return static_cast<std::uint64_t>(std::llround(exact));
}

std::vector<std::uint64_t> largest_remainder(std::span<const double> quotas, std::uint64_t target) {
    std::vector<std::uint64_t> counts(quotas.size(), 0);
    std::vector<double> remainder(quotas.size(), 0.0);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < quotas.size(); ++i) {
        const double q = quotas[i];
        if (!(q >= 0.0) || !std::isfinite(q)) throw Error("apportionment quotas must be finite and non-negative");
        const double whole = std::floor(q);
        counts[i] = static_cast<std::uint64_t>(whole);
        remainder[i] = q - whole;
        assigned += counts[i];
    }

    // Floating error can push the floors one unit past the target; trim from
    // the smallest remainders in that case.
    std::vector<std::size_t> order(quotas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return quotas[a] > quotas[b];
    });
    while (assigned > target) {
        for (auto it = order.rbegin(); it != order.rend() && assigned > target; ++it) {
            if (counts[*it] > 0) {
                --counts[*it];
                --assigned;
            }
        }
    }
    for (std::size_t k = 0; assigned < target; k = (k + 1) % order.size()) {
        if (quotas[order[k]] > 0.0 || std::all_of(quotas.begin(), quotas.end(), [](double q) { return q == 0.0; })) {
            ++counts[order[k]];
            ++assigned;
        }
    }
    return counts;
}

InjectionPlan build_injection_plan(const WeightTable& weights, double siir, std::uint64_t n_real) {
    if (n_real == 0) throw Error("real population must be non-empty");
    InjectionPlan plan;
    plan.siir = siir;
    plan.labels = weights.labels;
    plan.n_f_total = total_synthetic_count(siir, n_real);

    std::vector<double> quotas;
    quotas.reserve(weights.weight.size());
    double weight_sum = 0.0;
    for (double w : weights.weight) {
        if (!(w >= 0.0)) throw Error("injection weights must be non-negative");
        quotas.push_back(static_cast<double>(plan.n_f_total) * w);
        weight_sum += w;
    }
    const std::uint64_t target =
        weights.untuned ? plan.n_f_total
                        : static_cast<std::uint64_t>(std::llround(static_cast<double>(plan.n_f_total) * weight_sum));
    plan.per_label = largest_remainder(quotas, target);
    if (!weights.untuned) plan.n_f_total = target;
    return plan;
}

InjectionPlan plan_for(const LabelStats& real_stats, const InjectionConfig& config) {
    config.validate();
    const CfTable cf = complementary_frequencies(real_stats);
    if (cf.total_cf == 0 || config.siir == 0.0) {
        InjectionPlan plan;
        plan.siir = config.siir;
        plan.labels = real_stats.labels;
        plan.per_label.assign(real_stats.labels.size(), 0);
        return plan;
    }
    return build_injection_plan(injection_weights(cf, config), config.siir, real_stats.total);
}

}  // namespace rforge::rebalance
