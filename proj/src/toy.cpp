// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/toy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <unordered_map>

#include "rforge/csv.hpp"
#include "rforge/error.hpp"
#include "rforge/kernels.hpp"
#include "rforge/random.hpp"

namespace rforge::toy {

namespace {

std::string padded(std::size_t i) {
    std::ostringstream out;
    out << std::setw(6) << std::setfill('0') << i;
    return out.str();
}

double parse_double(const std::string& text, std::size_t row) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError("row " + std::to_string(row) + ": invalid feature value '" + text + "'", row);
    }
    return value;
}

std::vector<std::string> labels_in_order(const Dataset& records) {
    std::vector<std::string> labels;
    for (const auto& r : records) {
        if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
    }
    return labels;
}

}  // namespace

void ToyDatasetConfig::validate() const {
    if (counts.size() < 2) throw Error("toy dataset needs at least two labels");
    for (const auto& [label, n] : counts) {
        if (label.empty()) throw Error("toy dataset label must be non-empty");
        if (n < 10) throw Error("label '" + label + "' needs at least 10 records");
    }
    if (feature_dim < 1) throw Error("feature_dim must be positive");
    if (!(separation >= 0.0) || !std::isfinite(separation)) throw Error("separation must be non-negative");
}

ToyDatasetConfig ToyDatasetConfig::cxr_scaled() {
    ToyDatasetConfig config;
    config.counts = {{"COVID-19", 362}, {"Normal", 1019}, {"Viral Pneumonia", 135}, {"Lung Opacity", 601}};
    return config;
}

Dataset generate_toy_dataset(const ToyDatasetConfig& config) {
    config.validate();
    std::mt19937_64 engine(config.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Dataset records;
    std::size_t total = 0;
    for (const auto& entry : config.counts) total += entry.second;
    records.reserve(total);

    std::size_t next_id = 0;
    for (std::size_t c = 0; c < config.counts.size(); ++c) {
        const auto& [label, n] = config.counts[c];
        for (std::size_t i = 0; i < n; ++i) {
            FeatureRecord r;
            r.id = "real-" + padded(next_id++);
            r.label = label;
            r.source = Source::real;
            r.features.resize(config.feature_dim);
            for (auto& v : r.features) v = noise(engine);
            r.features[c % config.feature_dim] += config.separation;
            records.push_back(std::move(r));
        }
    }
    return records;
}

Manifest to_manifest(const Dataset& records) {
    std::vector<ManifestRecord> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back({r.id, r.label, r.source});
    return Manifest(std::move(out));
}

void save_features_csv(const Dataset& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    const std::size_t dim = records.empty() ? 0 : records.front().features.size();
    out << "id,label,source";
    for (std::size_t d = 0; d < dim; ++d) out << ",f" << d;
    out << '\n';
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << csv::quote_if_needed(r.id) << ',' << csv::quote_if_needed(r.label) << ',' << to_string(r.source);
        for (double v : r.features) out << ',' << v;
        out << '\n';
    }
}

Dataset load_features_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read_file(path);
    if (table.header.size() < 4 || table.header[0] != "id" || table.header[1] != "label" ||
        table.header[2] != "source") {
        throw ParseError("'" + path.string() + "' row 1: expected header 'id,label,source,f0,...'", 1);
    }
    const std::size_t dim = table.header.size() - 3;
    Dataset records;
    records.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& fields = table.rows[i];
        const std::size_t row = table.row_numbers[i];
        if (fields.size() != dim + 3) {
            throw ParseError("'" + path.string() + "' row " + std::to_string(row) + ": expected " +
                                 std::to_string(dim + 3) + " fields",
                             row);
        }
        const auto source = parse_source(fields[2]);
        if (!source) {
            throw ParseError("'" + path.string() + "' row " + std::to_string(row) + ": unknown source '" + fields[2] +
                                 "'",
                             row);
        }
        FeatureRecord r{fields[0], fields[1], *source, {}};
        r.features.reserve(dim);
        for (std::size_t d = 0; d < dim; ++d) r.features.push_back(parse_double(fields[3 + d], row));
        records.push_back(std::move(r));
    }
    to_manifest(records);  // id/label validation
    return records;
}

GaussianSynthesizer fit_synthesizer(const Dataset& records, const std::string& label) {
    std::vector<const FeatureRecord*> members;
    for (const auto& r : records) {
        if (r.label == label && r.source == Source::real) members.push_back(&r);
    }
    if (members.size() < 2) {
        throw Error("label '" + label + "' needs at least two real records to fit a synthesizer");
    }
    const std::size_t dim = members.front()->features.size();
    GaussianSynthesizer synth{label, std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
    for (const auto* r : members) {
        if (r->features.size() != dim) throw Error("records of label '" + label + "' differ in feature dimension");
        kernels::axpy(1.0, r->features, synth.mean);
    }
    const auto n = static_cast<double>(members.size());
    kernels::scale(1.0 / n, synth.mean);
    for (const auto* r : members) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = r->features[d] - synth.mean[d];
            synth.variance[d] += diff * diff;
        }
    }
    for (auto& v : synth.variance) v = std::max(v / (n - 1.0), kVarianceFloor);
    return synth;
}

Dataset sample_synthetic(const GaussianSynthesizer& synth, std::size_t n, std::uint64_t seed,
                         const std::string& id_prefix) {
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> sigma(synth.variance.size());
    std::transform(synth.variance.begin(), synth.variance.end(), sigma.begin(),
                   [](double v) { return std::sqrt(v); });
    Dataset out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FeatureRecord r{id_prefix + "-" + padded(i), synth.label, Source::synthetic, synth.mean};
        for (std::size_t d = 0; d < sigma.size(); ++d) r.features[d] += sigma[d] * noise(engine);
        out.push_back(std::move(r));
    }
    return out;
}

void Hyperparameters::validate() const {
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) throw Error("learning_rate must be non-negative");
    if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw Error("dropout_rate must lie in [0, 1)");
    if (!(siir >= 0.0 && siir < 1.0)) throw Error("siir must lie in [0, 1)");
}

Hyperparameters Hyperparameters::optimized_reference() { return {7.26e-5, 0.17, 0.20}; }

LogisticModel::LogisticModel(std::vector<std::string> labels, std::size_t dim)
    : labels_(std::move(labels)), dim_(dim), weights_(labels_.size() * dim, 0.0), bias_(labels_.size(), 0.0) {}

void LogisticModel::probabilities(const std::vector<double>& x, std::vector<double>& out) const {
    const std::size_t k = labels_.size();
    out.resize(k);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
        out[c] = kernels::dot(std::span<const double>(weights_).subspan(c * dim_, dim_), x) + bias_[c];
        top = std::max(top, out[c]);
    }
    double sum = 0.0;
    for (auto& v : out) {
        v = std::exp(v - top);
        sum += v;
    }
    kernels::scale(1.0 / sum, out);
}

std::size_t LogisticModel::predict_index(const std::vector<double>& x) const {
    std::size_t best = 0;
    double best_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < labels_.size(); ++c) {
        const double z = kernels::dot(std::span<const double>(weights_).subspan(c * dim_, dim_), x) + bias_[c];
        if (z > best_logit) {
            best_logit = z;
            best = c;
        }
    }
    return best;
}

const std::string& LogisticModel::predict(const std::vector<double>& x) const { return labels_[predict_index(x)]; }

double cross_entropy(const LogisticModel& model, const Dataset& records) {
    if (records.empty()) throw Error("cross_entropy over an empty set");
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t c = 0; c < model.labels().size(); ++c) index.emplace(model.labels()[c], c);
    std::vector<double> p;
    double total = 0.0;
    for (const auto& r : records) {
        const auto it = index.find(r.label);
        if (it == index.end()) throw Error("label '" + r.label + "' unknown to the model");
        model.probabilities(r.features, p);
        total -= std::log(std::max(p[it->second], std::numeric_limits<double>::min()));
    }
    return total / static_cast<double>(records.size());
}

TrainResult train_classifier(const Dataset& train, const Dataset& val, const Hyperparameters& hp,
                             std::size_t epochs, std::size_t batch_size, std::uint64_t seed) {
    hp.validate();
    if (train.empty()) throw Error("training set is empty");
    if (val.empty()) throw Error("validation set is empty");
    if (batch_size < 1) throw Error("batch_size must be positive");

    const std::size_t dim = train.front().features.size();
    const auto labels = labels_in_order(train);
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t c = 0; c < labels.size(); ++c) index.emplace(labels[c], c);
    for (const auto& r : val) {
        if (!index.contains(r.label)) throw Error("validation label '" + r.label + "' has no training samples");
    }
    for (const auto* set : {&train, &val}) {
        for (const auto& r : *set) {
            if (r.features.size() != dim) throw Error("record '" + r.id + "' has the wrong feature dimension");
        }
    }

    TrainResult result;
    result.model = LogisticModel(labels, dim);
    auto& weights = result.model.weights();
    auto& bias = result.model.bias();
    const std::size_t k = labels.size();

    std::mt19937_64 engine(seed);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> grad_w(k * dim);
    std::vector<double> grad_b(k);
    std::vector<double> x(dim);
    std::vector<double> p(k);
    const double keep = 1.0 - hp.dropout_rate;
    std::bernoulli_distribution kept(keep);

    for (std::size_t epoch = 0; epoch < epochs && hp.learning_rate > 0.0; ++epoch) {
        std::shuffle(order.begin(), order.end(), engine);
        for (std::size_t start = 0; start < order.size(); start += batch_size) {
            const std::size_t stop = std::min(order.size(), start + batch_size);
            std::fill(grad_w.begin(), grad_w.end(), 0.0);
            std::fill(grad_b.begin(), grad_b.end(), 0.0);
            for (std::size_t s = start; s < stop; ++s) {
                const auto& r = train[order[s]];
                if (hp.dropout_rate > 0.0) {
                    for (std::size_t d = 0; d < dim; ++d) x[d] = kept(engine) ? r.features[d] / keep : 0.0;
                } else {
                    x = r.features;
                }
                result.model.probabilities(x, p);
                p[index.at(r.label)] -= 1.0;
                for (std::size_t c = 0; c < k; ++c) {
                    kernels::axpy(p[c], x, std::span<double>(grad_w).subspan(c * dim, dim));
                    grad_b[c] += p[c];
                }
            }
            const double step = -hp.learning_rate / static_cast<double>(stop - start);
            kernels::axpy(step, grad_w, weights);
            kernels::axpy(step, grad_b, bias);
        }
        const bool finite = std::all_of(weights.begin(), weights.end(), [](double w) { return std::isfinite(w); }) &&
                            std::all_of(bias.begin(), bias.end(), [](double b) { return std::isfinite(b); });
        if (!finite) {
            result.diverged = true;
            result.warnings.push_back("training diverged in epoch " + std::to_string(epoch + 1));
            result.val_loss = std::numeric_limits<double>::infinity();
            return result;
        }
    }

    result.val_loss = cross_entropy(result.model, val);
    if (!std::isfinite(result.val_loss)) {
        result.diverged = true;
        result.warnings.push_back("validation loss is not finite");
        result.val_loss = std::numeric_limits<double>::infinity();
    }
    return result;
}

FoldSplit resolve_fold(const Dataset& dataset, const evaluation::Fold& fold) {
    std::unordered_map<std::string_view, const FeatureRecord*> by_id;
    by_id.reserve(dataset.size());
    for (const auto& r : dataset) by_id.emplace(r.id, &r);
    const auto collect = [&](const std::vector<std::string>& ids, Dataset& out, bool is_test) {
        out.reserve(ids.size());
        for (const auto& id : ids) {
            const auto it = by_id.find(id);
            if (it == by_id.end()) throw Error("fold references unknown id '" + id + "'");
            if (is_test && it->second->source == Source::synthetic) {
                throw Error("synthetic record '" + id + "' found in a test split");
            }
            out.push_back(*it->second);
        }
    };
    FoldSplit split;
    collect(fold.train, split.train, false);
    collect(fold.val, split.val, false);
    collect(fold.test, split.test, true);
    return split;
}

InjectedSplit inject_synthetic(const FoldSplit& split, double siir, double val_ratio, std::uint64_t seed) {
    InjectedSplit out{split.train, split.val, {}};

    Dataset real;
    for (const auto* set : {&split.train, &split.val}) {
        for (const auto& r : *set) {
            if (r.source == Source::real) real.push_back(r);
        }
    }
    const LabelStats stats = compute_label_stats(to_manifest(real), Source::real);
    out.plan = rebalance::plan_for(stats, {siir, {}});

    std::vector<std::uint64_t> sizes(out.plan.per_label.begin(), out.plan.per_label.end());
    const auto val_counts = evaluation::validation_counts(sizes, val_ratio);
    for (std::size_t l = 0; l < out.plan.labels.size(); ++l) {
        const std::size_t n = out.plan.per_label[l];
        if (n == 0) continue;
        const auto synth = fit_synthesizer(real, out.plan.labels[l]);
        auto samples = sample_synthetic(synth, n, derive_seed(seed, l), "syn-" + std::to_string(l));
        for (std::size_t i = 0; i < n; ++i) {
            (i < val_counts[l] ? out.val : out.train).push_back(std::move(samples[i]));
        }
    }
    return out;
}

double pipeline_objective(const FoldSplit& split, const Hyperparameters& hp, const ObjectiveOptions& options) {
    hp.validate();
    for (const auto& r : split.test) {
        if (r.source == Source::synthetic) throw Error("synthetic record '" + r.id + "' found in a test split");
    }
    const auto injected = inject_synthetic(split, hp.siir, options.val_ratio, options.training.seed);
    const auto trained = train_classifier(injected.train, injected.val, hp, options.training.epochs,
                                          options.training.batch_size, options.training.seed);
    return trained.val_loss;
}

double pipeline_objective(const Dataset& dataset, const evaluation::Fold& fold, const Hyperparameters& hp,
                          const ObjectiveOptions& options) {
    return pipeline_objective(resolve_fold(dataset, fold), hp, options);
}

}  // namespace rforge::toy
