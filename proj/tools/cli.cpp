// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "external_objective.hpp"
#include "rforge/csv.hpp"
#include "rforge/error.hpp"
#include "rforge/evaluation.hpp"
#include "rforge/json_io.hpp"
#include "rforge/kernels.hpp"
#include "rforge/manifest.hpp"
#include "rforge/pipeline.hpp"
#include "rforge/progan.hpp"
#include "rforge/random.hpp"
#include "rforge/rebalance.hpp"
#include "rforge/sma.hpp"
#include "rforge/toy.hpp"

namespace rforge::cli {

namespace fs = std::filesystem;
using json_io::Json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
    return value;
}

// --seed wins, then the environment, then 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv(kSeedEnv)) {
        const auto value = parse_u64(env);
        if (!value) throw UsageError(std::string(kSeedEnv) + " must be a non-negative integer, got '" + env + "'");
        return *value;
    }
    return 0;
}

Json meta(const std::string& command, Json config, std::uint64_t seed) {
    Json m = Json::object();
    m["tool"] = "rebalance-forge";
    m["version"] = RFORGE_VERSION;
    m["command"] = command;
    m["config"] = std::move(config);
    m["seed"] = seed;
    return m;
}

Json with_meta(Json body, Json m) {
    body["meta"] = std::move(m);
    return body;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

// ---- stats ---------------------------------------------------------------

struct StatsArgs {
    std::string manifest;
    std::string source = "all";
    std::string out;
};

int run_stats(const StatsArgs& a, std::uint64_t seed, std::ostream& out) {
    std::optional<Source> filter;
    if (a.source != "all") filter = parse_source(a.source);
    const auto manifest = load_manifest(a.manifest);
    const auto stats = compute_label_stats(manifest, filter);

    std::size_t width = std::string_view("Labels").size();
    for (const auto& l : stats.labels) width = std::max(width, l.size());
    out << std::left << std::setw(static_cast<int>(width)) << "Labels" << "  " << std::right << std::setw(9)
        << "Frequency" << "  " << std::setw(6) << "Ratio" << '\n';
    for (std::size_t i = 0; i < stats.labels.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(width)) << stats.labels[i] << "  " << std::right
            << std::setw(9) << stats.frequency[i] << "  " << std::setw(6) << fixed(stats.ratio[i], 4) << '\n';
    }
    out << std::left << std::setw(static_cast<int>(width)) << "Total" << "  " << std::right << std::setw(9)
        << stats.total << '\n';

    if (!a.out.empty()) {
        Json body = Json::object();
        Json labels = Json::object();
        for (std::size_t i = 0; i < stats.labels.size(); ++i) {
            labels[stats.labels[i]] = {{"frequency", stats.frequency[i]}, {"ratio", stats.ratio[i]}};
        }
        body["labels"] = std::move(labels);
        body["total"] = stats.total;
        json_io::write_json_atomic(
            with_meta(std::move(body), meta("stats", {{"manifest", a.manifest}, {"source", a.source}}, seed)), a.out);
    }
    return kExitOk;
}

// ---- plan-injection ------------------------------------------------------

struct PlanInjectionArgs {
    std::string manifest;
    double siir = 0.0;
    std::vector<std::string> tune;
    std::string out;
};

std::map<std::string, double> parse_tuning(const std::vector<std::string>& items) {
    std::map<std::string, double> tuning;
    for (const auto& item : items) {
        const auto eq = item.rfind('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--tune expects label=factor, got '" + item + "'");
        const std::string value = item.substr(eq + 1);
        char* end = nullptr;
        const double a = std::strtod(value.c_str(), &end);
        if (value.empty() || end != value.c_str() + value.size()) {
            throw UsageError("--tune factor for '" + item.substr(0, eq) + "' is not a number");
        }
        tuning[item.substr(0, eq)] = a;
    }
    return tuning;
}

int run_plan_injection(const PlanInjectionArgs& a, std::uint64_t seed, std::ostream& out) {
    const auto tuning = parse_tuning(a.tune);
    const auto manifest = load_manifest(a.manifest);
    const rebalance::InjectionConfig config{a.siir, tuning};
    config.validate();
    for (const auto& [label, factor] : tuning) {
        if (!manifest.label_index(label)) throw Error("--tune names unknown label '" + label + "'");
    }
    const auto stats = compute_label_stats(manifest, Source::real);
    const auto cf = rebalance::complementary_frequencies(stats);
    const auto weights = rebalance::injection_weights(cf, config);
    const auto plan = rebalance::build_injection_plan(weights, a.siir, stats.total);

    out << "reference label: " << cf.reference_label << "\n";
    out << "N_r " << stats.total << ", siir " << a.siir << ", N_f " << plan.n_f_total << "\n";
    for (std::size_t i = 0; i < plan.labels.size(); ++i) {
        out << "  " << plan.labels[i] << ": cf " << cf.cf[i] << ", weight " << fixed(weights.weight[i], 4)
            << ", inject " << plan.per_label[i] << "\n";
    }

    Json tune_json = Json::object();
    for (const auto& [label, factor] : tuning) tune_json[label] = factor;
    const Json config_json = {{"manifest", a.manifest}, {"siir", a.siir}, {"tune", tune_json}};
    json_io::write_json_atomic(
        with_meta(json_io::injection_plan_to_json(plan, &weights, &cf), meta("plan-injection", config_json, seed)),
        a.out);
    return kExitOk;
}

// ---- plan-folds ----------------------------------------------------------

struct PlanFoldsArgs {
    std::string manifest;
    std::size_t k = evaluation::kDefaultFolds;
    double val_ratio = evaluation::kDefaultValRatio;
    std::string plan;
    std::string out;
};

int run_plan_folds(const PlanFoldsArgs& a, std::uint64_t seed, std::ostream& out) {
    const auto manifest = load_manifest(a.manifest);
    std::optional<rebalance::InjectionPlan> injection;
    if (!a.plan.empty()) injection = json_io::injection_plan_from_json(json_io::read_json(a.plan));
    const auto plan = evaluation::plan_folds(manifest, a.k, a.val_ratio, seed, injection);

    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
        const auto& fold = plan.folds[f];
        out << "fold " << f << ": test " << fold.test.size() << ", train " << fold.train.size() << ", val "
            << fold.val.size() << "\n";
    }
    Json config_json = {{"manifest", a.manifest}, {"k", a.k}, {"val_ratio", a.val_ratio}};
    if (!a.plan.empty()) config_json["plan"] = a.plan;
    json_io::write_json_atomic(with_meta(json_io::fold_plan_to_json(plan), meta("plan-folds", config_json, seed)),
                               a.out);
    return kExitOk;
}

// ---- validate-gan --------------------------------------------------------

struct ValidateGanArgs {
    std::string spec;
    std::string builtin;
    int stage = 6;
    bool verbatim = false;
    std::string out;
};

std::string shape_or_dash(const std::optional<progan::TensorShape>& s) { return s ? to_string(*s) : "-"; }

int run_validate_gan(const ValidateGanArgs& a, std::uint64_t seed, std::ostream& out) {
    progan::NetworkSpec spec;
    if (!a.spec.empty()) {
        spec = json_io::network_from_json(json_io::read_json(a.spec));
    } else if (a.builtin == "generator") {
        spec = progan::builtin_generator_spec(a.stage, a.verbatim);
    } else {
        spec = progan::builtin_critic_spec(a.stage, a.verbatim);
    }
    const auto report = progan::validate_network(spec);

    out << spec.name << " (stage " << spec.stage << "), input " << to_string(spec.input_shape) << "\n";
    out << std::left << std::setw(4) << "#" << std::setw(22) << "layer" << std::setw(16) << "output"
        << "declared\n";
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const auto& l = spec.layers[i];
        std::string name(progan::to_string(l.kind));
        if (progan::is_conv(l.kind)) {
            name += " k" + std::to_string(l.kernel) + " p" + std::to_string(l.padding) + " s" +
                    std::to_string(l.stride);
        }
        out << std::left << std::setw(4) << i << std::setw(22) << name << std::setw(16)
            << shape_or_dash(i < report.trace.size() ? report.trace[i] : std::nullopt)
            << shape_or_dash(l.declared_output) << "\n";
    }
    if (report.findings.empty()) {
        out << "no findings\n";
    } else {
        out << report.findings.size() << " finding(s):\n";
        for (const auto& f : report.findings) {
            out << "  layer " << f.layer_index << ": " << f.note;
            if (f.expected_shape || f.declared_shape) {
                out << " (computed " << shape_or_dash(f.expected_shape) << ", declared "
                    << shape_or_dash(f.declared_shape) << ")";
            }
            out << "\n";
        }
    }

    if (!a.out.empty()) {
        Json findings = Json::array();
        for (const auto& f : report.findings) {
            Json item = {{"layer_index", f.layer_index}, {"note", f.note}};
            if (f.expected_shape) item["expected"] = to_string(*f.expected_shape);
            if (f.declared_shape) item["declared"] = to_string(*f.declared_shape);
            findings.push_back(std::move(item));
        }
        Json trace = Json::array();
        for (const auto& s : report.trace) trace.push_back(s ? Json(to_string(*s)) : Json(nullptr));
        Json config_json = Json::object();
        if (!a.spec.empty()) {
            config_json["spec"] = a.spec;
        } else {
            config_json = {{"builtin", a.builtin}, {"stage", a.stage}, {"verbatim", a.verbatim}};
        }
        Json body = {{"ok", report.ok}, {"findings", findings}, {"trace", trace}};
        json_io::write_json_atomic(with_meta(std::move(body), meta("validate-gan", config_json, seed)), a.out);
    }
    return report.ok ? kExitOk : kExitDomain;
}

// ---- optimize ------------------------------------------------------------

struct OptimizeArgs {
    std::string config;
    std::string objective;
    std::string command;
    std::string out;
};

int run_optimize(const OptimizeArgs& a, std::uint64_t seed, std::ostream& out) {
    const Json raw = json_io::read_json(a.config);
    sma::OptimizationResult result;
    Json config_json = Json::object();
    if (a.objective == "toy") {
        pipeline::ToyRunConfig toy_config = raw.contains("toy") ? json_io::toy_config_from_json(raw["toy"])
                                                                : pipeline::ToyRunConfig{};
        toy_config.seed = seed;
        auto search = json_io::sma_config_from_json(raw, toy_config.search);
        search.seed = seed;
        toy_config.search = search;
        toy_config.validate();

        auto generation = toy_config.dataset;
        generation.seed = derive_seed(seed, 0);
        const auto data = toy::generate_toy_dataset(generation);
        const auto folds =
            evaluation::plan_folds(toy::to_manifest(data), toy_config.k, toy_config.val_ratio, derive_seed(seed, 1));
        const auto split = toy::resolve_fold(data, folds.folds[toy_config.search_fold]);
        toy::ObjectiveOptions options{toy_config.training, toy_config.val_ratio};
        options.training.seed = derive_seed(seed, 2);
        result = sma::optimize(
            [&](std::span<const double> x) { return toy::pipeline_objective(split, {x[0], x[1], x[2]}, options); },
            search);
        config_json = json_io::sma_config_to_json(search);
        config_json["objective"] = "toy";
        Json toy_json = json_io::toy_config_to_json(toy_config);
        toy_json.erase("search");
        config_json["toy"] = std::move(toy_json);
    } else {
        if (a.command.empty()) throw UsageError("--objective external-command requires --command");
        auto search = json_io::sma_config_from_json(raw);
        search.seed = seed;
        search.validate();
        ExternalObjective objective(a.command);
        result = sma::optimize([&](std::span<const double> x) { return objective(x); }, search);
        config_json = json_io::sma_config_to_json(search);
        config_json["objective"] = "external-command";
        config_json["command"] = a.command;
    }

    out << "best fitness " << std::setprecision(10) << result.best_fitness << " at [";
    for (std::size_t d = 0; d < result.best_position.size(); ++d) {
        out << (d ? ", " : "") << result.best_position[d];
    }
    out << "] after " << result.evaluations << " evaluations\n";
    for (const auto& w : result.warnings) out << "warning: " << w << "\n";

    json_io::write_json_atomic(
        with_meta(json_io::optimization_result_to_json(result), meta("optimize", config_json, seed)), a.out);
    return kExitOk;
}

// ---- evaluate ------------------------------------------------------------

struct EvaluateArgs {
    std::string predictions;
    std::string out;
};

int run_evaluate(const EvaluateArgs& a, std::uint64_t seed, std::ostream& out) {
    const auto table = csv::read_file(a.predictions);
    const std::vector<std::string> expected{"fold", "id", "true_label", "predicted_label"};
    const auto bad_row = [&](std::size_t line, const std::string& msg) {
        return ParseError("'" + a.predictions + "' row " + std::to_string(line) + ": " + msg, line);
    };
    if (table.header.size() < expected.size() || !std::equal(expected.begin(), expected.end(), table.header.begin())) {
        throw bad_row(1, "expected header 'fold,id,true_label,predicted_label'");
    }

    std::map<std::uint64_t, std::pair<std::vector<std::string>, std::vector<std::string>>> folds;
    std::vector<std::string> labels;
    const auto note_label = [&](const std::string& l) {
        if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    };
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = table.row_numbers[r];
        if (row.size() < expected.size()) throw bad_row(line, "expected 4 fields");
        const auto fold = parse_u64(row[0]);
        if (!fold) throw bad_row(line, "fold must be a non-negative integer");
        if (row[2].empty() || row[3].empty()) throw bad_row(line, "labels must be non-empty");
        folds[*fold].first.push_back(row[2]);
        folds[*fold].second.push_back(row[3]);
        note_label(row[2]);
    }
    if (folds.empty()) throw Error("predictions file has no rows");
    for (const auto& [f, tp] : folds) {
        for (const auto& p : tp.second) note_label(p);
    }

    std::vector<evaluation::MetricsReport> reports;
    std::vector<evaluation::ConfusionMatrix> matrices;
    for (const auto& [f, tp] : folds) {
        auto cm = evaluation::confusion_matrix(tp.first, tp.second, labels);
        reports.push_back(evaluation::metrics_from_confusion(cm));
        matrices.push_back(std::move(cm));
    }
    const auto summary = evaluation::aggregate_folds(reports, matrices);

    out << folds.size() << " fold(s), " << labels.size() << " label(s)\n";
    for (std::size_t m = 0; m < evaluation::kMetricNames.size(); ++m) {
        out << "  " << std::left << std::setw(12) << evaluation::kMetricNames[m] << fixed(summary.metrics[m].mean, 4)
            << " +/- " << fixed(summary.metrics[m].std, 4) << "\n";
    }
    for (std::size_t f = 0; f < reports.size(); ++f) {
        for (const auto& flag : reports[f].flags) out << "  note (fold " << f << "): " << flag << "\n";
    }
    json_io::write_json_atomic(
        with_meta(json_io::summary_to_json(summary), meta("evaluate", {{"predictions", a.predictions}}, seed)), a.out);
    return kExitOk;
}

// ---- toy run -------------------------------------------------------------

struct ToyArgs {
    std::string config;
    std::string features;
    std::string dataset_out;
    std::string out;
};

int run_toy(const ToyArgs& a, std::uint64_t seed, std::ostream& out) {
    auto config = a.config.empty() ? pipeline::ToyRunConfig{} : json_io::toy_config_from_json(json_io::read_json(a.config));
    config.seed = seed;
    config.validate();

    std::optional<toy::Dataset> data;
    if (!a.features.empty()) data = toy::load_features_csv(a.features);
    if (!a.dataset_out.empty()) {
        auto generation = config.dataset;
        generation.seed = derive_seed(seed, 0);
        if (!data) data = toy::generate_toy_dataset(generation);
    }
    const auto report = pipeline::run_toy(config, data);

    out << "records " << report.records << ", search evaluations " << report.search.evaluations << "\n";
    out << "tuned: lr " << report.best.learning_rate << ", dropout " << fixed(report.best.dropout_rate, 4)
        << ", siir " << fixed(report.best.siir, 4) << " (val loss " << fixed(report.search.best_fitness, 5) << ")\n";
    out << std::left << std::setw(12) << "metric" << std::setw(20) << "tuned+injection" << "baseline\n";
    for (std::size_t m = 0; m < evaluation::kMetricNames.size(); ++m) {
        out << std::left << std::setw(12) << evaluation::kMetricNames[m] << std::setw(20)
            << (fixed(report.tuned.metrics[m].mean, 4) + " +/- " + fixed(report.tuned.metrics[m].std, 4))
            << fixed(report.baseline.metrics[m].mean, 4) << " +/- " << fixed(report.baseline.metrics[m].std, 4)
            << "\n";
    }

    Json config_json = json_io::toy_config_to_json(config);
    if (!a.features.empty()) config_json["features"] = a.features;
    if (!a.dataset_out.empty()) {
        auto tmp = fs::path(a.dataset_out);
        tmp += ".tmp";
        toy::save_features_csv(*data, tmp);
        fs::rename(tmp, a.dataset_out);
    }
    json_io::write_json_atomic(with_meta(json_io::toy_report_to_json(report), meta("toy run", config_json, seed)),
                               a.out);
    return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Imbalance-aware synthetic injection planning, slime mould search and GAN shape checks",
                 "rebalance-forge"};
    app.set_version_flag("--version", std::string(RFORGE_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed_flag;
    app.add_option("--seed", seed_flag, "Seed (overrides REBALANCE_FORGE_SEED)");
    std::string isa;
    app.add_option("--isa", isa, "Force a kernel variant")->check(CLI::IsMember({"scalar", "avx2", "neon"}));

    StatsArgs stats;
    auto* stats_cmd = app.add_subcommand("stats", "Per-label frequency and ratio table");
    stats_cmd->add_option("--manifest", stats.manifest, "Manifest CSV (id,label,source)")->required();
    stats_cmd->add_option("--source", stats.source, "Records to count")
        ->check(CLI::IsMember({"real", "synthetic", "all"}));
    stats_cmd->add_option("--out", stats.out, "Optional JSON output");

    PlanInjectionArgs inj;
    auto* inj_cmd = app.add_subcommand("plan-injection", "Synthetic counts per label for a target ratio");
    inj_cmd->add_option("--manifest", inj.manifest, "Manifest CSV")->required();
    inj_cmd->add_option("--siir", inj.siir, "Synthetic share of the combined dataset, in [0, 1)")->required();
    inj_cmd->add_option("--tune", inj.tune, "Per-label tuning factor, label=a (repeatable)");
    inj_cmd->add_option("--out", inj.out, "Plan JSON")->required();

    PlanFoldsArgs folds;
    auto* folds_cmd = app.add_subcommand("plan-folds", "Stratified k-fold plan with validation splits");
    folds_cmd->add_option("--manifest", folds.manifest, "Manifest CSV")->required();
    folds_cmd->add_option("--k", folds.k, "Number of folds");
    folds_cmd->add_option("--val-ratio", folds.val_ratio, "Validation share of each fold's train+val");
    folds_cmd->add_option("--plan", folds.plan, "Injection plan JSON the synthetic records must match");
    folds_cmd->add_option("--out", folds.out, "Fold plan JSON")->required();
    folds_cmd->add_option("--seed", seed_flag, "Seed");

    ValidateGanArgs gan;
    auto* gan_cmd = app.add_subcommand("validate-gan", "Shape-check a generator or critic description");
    auto* spec_opt = gan_cmd->add_option("--spec", gan.spec, "Network spec JSON");
    auto* builtin_opt = gan_cmd->add_option("--builtin", gan.builtin, "Built-in network")
                            ->check(CLI::IsMember({"generator", "critic"}));
    spec_opt->excludes(builtin_opt);
    gan_cmd->add_option("--stage", gan.stage, "Progressive stage 1..6")->check(CLI::Range(1, 6));
    gan_cmd->add_flag("--verbatim", gan.verbatim, "Use the layer tables as published (stage 6)");
    gan_cmd->add_option("--out", gan.out, "Optional JSON report");

    OptimizeArgs opt;
    auto* opt_cmd = app.add_subcommand("optimize", "Slime mould search over a bounded box");
    opt_cmd->add_option("--config", opt.config, "Optimizer config JSON")->required();
    opt_cmd->add_option("--objective", opt.objective, "Objective to minimize")
        ->required()
        ->check(CLI::IsMember({"toy", "external-command"}));
    opt_cmd->add_option("--command", opt.command, "Shell command for external-command");
    opt_cmd->add_option("--out", opt.out, "Result JSON")->required();
    opt_cmd->add_option("--seed", seed_flag, "Seed");

    EvaluateArgs eval;
    auto* eval_cmd = app.add_subcommand("evaluate", "Cross-validated macro metrics from predictions");
    eval_cmd->add_option("--predictions", eval.predictions, "CSV fold,id,true_label,predicted_label")->required();
    eval_cmd->add_option("--out", eval.out, "Summary JSON")->required();

    ToyArgs toy_args;
    auto* toy_cmd = app.add_subcommand("toy", "Desk-scale end-to-end pipeline");
    toy_cmd->require_subcommand(1);
    auto* toy_run = toy_cmd->add_subcommand("run", "Generate, plan, search, cross-validate and summarize");
    toy_run->add_option("--config", toy_args.config, "Toy config JSON");
    toy_run->add_option("--features", toy_args.features, "Use this feature CSV instead of generating one");
    toy_run->add_option("--dataset-out", toy_args.dataset_out, "Also write the dataset used");
    toy_run->add_option("--out", toy_args.out, "Report JSON")->required();
    toy_run->add_option("--seed", seed_flag, "Seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (gan_cmd->parsed() && gan.spec.empty() && gan.builtin.empty()) {
            throw CLI::RequiredError("validate-gan needs --spec or --builtin");
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << RFORGE_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return kExitUsage;
    }

    try {
        if (!isa.empty()) {
            using kernels::Isa;
            const Isa wanted = isa == "avx2" ? Isa::avx2 : isa == "neon" ? Isa::neon : Isa::scalar;
            kernels::set_isa(wanted);
        }
        const std::uint64_t seed = resolve_seed(seed_flag);
        if (stats_cmd->parsed()) return run_stats(stats, seed, out);
        if (inj_cmd->parsed()) return run_plan_injection(inj, seed, out);
        if (folds_cmd->parsed()) return run_plan_folds(folds, seed, out);
        if (gan_cmd->parsed()) return run_validate_gan(gan, seed, out);
        if (opt_cmd->parsed()) return run_optimize(opt, seed, out);
        if (eval_cmd->parsed()) return run_evaluate(eval, seed, out);
        return run_toy(toy_args, seed, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace rforge::cli
