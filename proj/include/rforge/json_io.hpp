// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>

#include "json.hpp"
#include "rforge/evaluation.hpp"
#include "rforge/pipeline.hpp"
#include "rforge/progan.hpp"
#include "rforge/rebalance.hpp"
#include "rforge/sma.hpp"

// JSON forms of the artifacts exchanged through files. Objects keep insertion
// order so label order survives a round trip.

namespace rforge::json_io {

using Json = nlohmann::ordered_json;

/// {"siir", "n_f_total", "per_label", "weights", "cf"}; weights/cf are omitted
/// when null.
Json injection_plan_to_json(const rebalance::InjectionPlan& plan, const rebalance::WeightTable* weights,
                            const rebalance::CfTable* cf);
rebalance::InjectionPlan injection_plan_from_json(const Json& j);

/// {"k", "val_ratio", "seed", "folds": [{"test", "train", "val"}]}
Json fold_plan_to_json(const evaluation::FoldPlan& plan);
evaluation::FoldPlan fold_plan_from_json(const Json& j);

/// Per metric {"mean", "std"}, then labels, both matrices and per-fold values.
Json summary_to_json(const evaluation::CrossValSummary& summary);

/// {"name", "stage", "input_shape": [c,h,w], "layers": [{"kind", "k", "p", "s",
/// "out_channels", "activation", "declared_input"?, "declared_output"?}]}
Json network_to_json(const progan::NetworkSpec& spec);
progan::NetworkSpec network_from_json(const Json& j);

/// Accepts {"population_size", "epochs", "lower_bounds", "upper_bounds",
/// "scales"?, "z"?, "seed"?, "threads"?}; absent keys keep `base` values.
sma::SmaConfig sma_config_from_json(const Json& j, sma::SmaConfig base = {});
Json sma_config_to_json(const sma::SmaConfig& config);
Json optimization_result_to_json(const sma::OptimizationResult& result);

pipeline::ToyRunConfig toy_config_from_json(const Json& j);
Json toy_config_to_json(const pipeline::ToyRunConfig& config);
Json toy_report_to_json(const pipeline::ToyRunReport& report);

Json read_json(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place, so a failed
/// run never leaves a partial artifact.
void write_json_atomic(const Json& j, const std::filesystem::path& path);

}  // namespace rforge::json_io
