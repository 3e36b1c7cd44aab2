// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rforge/manifest.hpp"

// Weighted synthetic-injection planning.
//
// Every label is topped up toward the most frequent ("reference") label in
// proportion to its gap from it:
//
//   cf[l]   = n[ref] - n[l]                  complementary frequency
//   w[l]    = cf[l] / sum(cf) * a[l]         injection weight, a = tuning factor
//   N_f     = siir * N_r / (1 - siir)        synthetic total for ratio siir
//   n_f[l]  = N_f * w[l]                     per-label synthetic count
//
// siir is the synthetic share of the combined dataset, N_f / (N_f + N_r).

namespace rforge::rebalance {

struct InjectionConfig {
    double siir = 0.0;
    /// Per-label tuning factor; labels not listed use 1.0.
    std::map<std::string, double> tuning;

    double tuning_for(const std::string& label) const;
    /// Throws rforge::Error on siir outside [0, 1) or a non-positive factor.
    void validate() const;
};

struct CfTable {
    std::vector<std::string> labels;
    std::string reference_label;
    std::vector<std::uint64_t> cf;
    std::uint64_t total_cf = 0;
};

struct WeightTable {
    std::vector<std::string> labels;
    std::vector<double> weight;
    /// True when every tuning factor was exactly 1 (weights then sum to 1).
    bool untuned = true;
};

struct InjectionPlan {
    double siir = 0.0;
    std::uint64_t n_f_total = 0;
    std::vector<std::string> labels;
    std::vector<std::uint64_t> per_label;

    std::uint64_t count_for(const std::string& label) const;
};

/// Reference label is the first maximum-frequency label in stats order.
CfTable complementary_frequencies(const LabelStats& stats);

/// Throws rforge::Error("nothing to inject") for a perfectly balanced table.
WeightTable injection_weights(const CfTable& cf, const InjectionConfig& config);

/// round-half-away-from-zero of siir * n_real / (1 - siir).
std::uint64_t total_synthetic_count(double siir, std::uint64_t n_real);

/// Integerizes fractional quotas so the result sums to exactly `target`:
/// floors first, then one extra unit to each of the largest remainders
/// (ties: larger quota first, then lower index).
std::vector<std::uint64_t> largest_remainder(std::span<const double> quotas, std::uint64_t target);

/// Per-label counts N_f * w[l], apportioned to sum to N_f (or to
/// round(N_f * sum(w)) when tuning factors are not all 1).
InjectionPlan build_injection_plan(const WeightTable& weights, double siir, std::uint64_t n_real);

/// stats -> cf -> weights -> plan in one call. A perfectly balanced input or
/// siir == 0 yields an all-zero plan instead of an error.
InjectionPlan plan_for(const LabelStats& real_stats, const InjectionConfig& config);

}  // namespace rforge::rebalance
