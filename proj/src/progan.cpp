// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/progan.hpp"

#include <numeric>

#include "rforge/error.hpp"

namespace rforge::progan {

namespace {

constexpr int kStages = 6;
constexpr long kLatent = 112;

void check_stage(int stage) {
    if (stage < 1 || stage > kStages) {
        throw Error("stage must be in 1.." + std::to_string(kStages) + ", got " + std::to_string(stage));
    }
}

long conv_extent(long in, long k, long p, long s) {
    if (s < 1) throw Error("stride must be positive");
    const long span = in + 2 * p - k;
    if (span < 0) return 0;
    return span / s + 1;
}

LayerSpec declared(LayerSpec layer, TensorShape in, TensorShape out) {
    layer.declared_input = in;
    layer.declared_output = out;
    return layer;
}

TensorShape sq(long c, long hw) { return {c, hw, hw}; }

}  // namespace

std::string to_string(const TensorShape& shape) {
    return std::to_string(shape.channels) + "x" + std::to_string(shape.height) + "x" + std::to_string(shape.width);
}

std::string_view to_string(LayerKind kind) noexcept {
    switch (kind) {
        case LayerKind::Conv2D:
            return "Conv2D";
        case LayerKind::TConv2D:
            return "TConv2D";
        case LayerKind::UpSample:
            return "UpSample";
        case LayerKind::DownSample:
            return "DownSample";
        case LayerKind::MinibatchStdDev:
            return "MinibatchStdDev";
        case LayerKind::ToRGB:
            return "ToRGB";
        case LayerKind::ConvThenDownSample:
            return "ConvThenDownSample";
    }
    return "?";
}

std::string_view to_string(Activation activation) noexcept {
    switch (activation) {
        case Activation::LeakyReLU:
            return "LeakyReLU";
        case Activation::Linear:
            return "Linear";
        case Activation::None:
            return "None";
    }
    return "?";
}

std::optional<LayerKind> parse_layer_kind(std::string_view text) noexcept {
    for (auto kind : {LayerKind::Conv2D, LayerKind::TConv2D, LayerKind::UpSample, LayerKind::DownSample,
                      LayerKind::MinibatchStdDev, LayerKind::ToRGB, LayerKind::ConvThenDownSample}) {
        if (text == to_string(kind)) return kind;
    }
    return std::nullopt;
}

std::optional<Activation> parse_activation(std::string_view text) noexcept {
    for (auto act : {Activation::LeakyReLU, Activation::Linear, Activation::None}) {
        if (text == to_string(act)) return act;
    }
    return std::nullopt;
}

bool is_conv(LayerKind kind) noexcept {
    return kind == LayerKind::Conv2D || kind == LayerKind::TConv2D || kind == LayerKind::ToRGB ||
           kind == LayerKind::ConvThenDownSample;
}

LayerSpec LayerSpec::conv(long k, long p, long s, long out, Activation act) {
    return {LayerKind::Conv2D, k, p, s, out, act, std::nullopt, std::nullopt};
}

LayerSpec LayerSpec::tconv(long k, long p, long s, long out, Activation act) {
    return {LayerKind::TConv2D, k, p, s, out, act, std::nullopt, std::nullopt};
}

LayerSpec LayerSpec::conv_down(long k, long p, long s, long out, Activation act) {
    return {LayerKind::ConvThenDownSample, k, p, s, out, act, std::nullopt, std::nullopt};
}

LayerSpec LayerSpec::to_rgb() {
    return {LayerKind::ToRGB, 1, 0, 1, 3, Activation::Linear, std::nullopt, std::nullopt};
}

LayerSpec LayerSpec::simple(LayerKind kind, Activation act) {
    return {kind, 0, 0, 1, 0, act, std::nullopt, std::nullopt};
}

TensorShape propagate_shape(const LayerSpec& layer, const TensorShape& input) {
    if (!input.valid()) throw Error("invalid input shape " + to_string(input));
    if (is_conv(layer.kind) && layer.kind != LayerKind::ToRGB) {
        if (layer.kernel < 1 || layer.padding < 0 || layer.stride < 1) {
            throw Error(std::string(to_string(layer.kind)) + ": kernel/stride must be positive, padding non-negative");
        }
        if (layer.out_channels < 1) throw Error(std::string(to_string(layer.kind)) + ": out_channels must be positive");
    }

    TensorShape out = input;
    switch (layer.kind) {
        case LayerKind::Conv2D:
        case LayerKind::ConvThenDownSample:
            out = {layer.out_channels, conv_extent(input.height, layer.kernel, layer.padding, layer.stride),
                   conv_extent(input.width, layer.kernel, layer.padding, layer.stride)};
            break;
        case LayerKind::TConv2D:
            out = {layer.out_channels, (input.height - 1) * layer.stride - 2 * layer.padding + layer.kernel,
                   (input.width - 1) * layer.stride - 2 * layer.padding + layer.kernel};
            break;
        case LayerKind::ToRGB:
            out = {3, input.height, input.width};
            break;
        case LayerKind::UpSample:
            out = {input.channels, input.height * 2, input.width * 2};
            break;
        case LayerKind::DownSample:
            break;
        case LayerKind::MinibatchStdDev:
            out = {input.channels + 1, input.height, input.width};
            break;
    }
    if (!out.valid()) {
        throw Error(std::string(to_string(layer.kind)) + " maps " + to_string(input) + " to non-positive " +
                    to_string(out));
    }
    if (layer.kind == LayerKind::DownSample || layer.kind == LayerKind::ConvThenDownSample) {
        if (out.height % 2 != 0 || out.width % 2 != 0) {
            throw Error(std::string(to_string(layer.kind)) + ": cannot halve odd spatial size " + to_string(out));
        }
        out.height /= 2;
        out.width /= 2;
    }
    return out;
}

NetworkSpec builtin_generator_spec(int stage, bool verbatim) {
    check_stage(stage);
    NetworkSpec spec;
    spec.name = verbatim ? "generator-verbatim" : "generator";
    spec.stage = stage;
    spec.input_shape = {kLatent, 1, 1};
    spec.verbatim = verbatim;
    const auto up = LayerSpec::simple(LayerKind::UpSample);

    if (verbatim) {
        if (stage != kStages) throw Error("the verbatim generator table exists for stage 6 only");
        spec.layers = {
            declared(LayerSpec::tconv(7, 0, 1, 224), sq(112, 1), sq(224, 7)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(224, 7), sq(224, 7)),
            declared(up, sq(224, 7), sq(224, 14)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(224, 14), sq(224, 14)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(224, 14), sq(224, 14)),
            declared(up, sq(224, 14), sq(224, 28)),
            declared(LayerSpec::conv(3, 1, 1, 56), sq(56, 28), sq(56, 28)),
            declared(LayerSpec::conv(3, 1, 1, 56), sq(56, 28), sq(56, 28)),
            declared(up, sq(56, 28), sq(56, 56)),
            declared(LayerSpec::conv(3, 1, 1, 28), sq(56, 56), sq(28, 56)),
            declared(LayerSpec::conv(3, 1, 1, 28), sq(28, 56), sq(28, 56)),
            declared(up, sq(28, 56), sq(28, 112)),
            declared(LayerSpec::conv(3, 1, 1, 14), sq(28, 112), sq(14, 112)),
            declared(LayerSpec::conv(3, 1, 1, 14), sq(14, 112), sq(14, 112)),
            declared(up, sq(14, 112), sq(14, 224)),
            declared(LayerSpec::conv(3, 1, 1, 7), sq(14, 224), sq(7, 224)),
            declared(LayerSpec::conv(3, 1, 1, 7), sq(7, 224), sq(7, 224)),
            declared(LayerSpec::to_rgb(), sq(7, 224), sq(3, 224)),
        };
        return spec;
    }

    // Constant latent-input block, then one upsampling block per extra stage.
    spec.layers = {LayerSpec::tconv(7, 0, 1, 224), LayerSpec::conv(3, 1, 1, 224)};
    constexpr std::array<long, 5> kBlockChannels{224, 56, 28, 14, 7};
    for (int block = 0; block < stage - 1; ++block) {
        const long c = kBlockChannels[static_cast<std::size_t>(block)];
        spec.layers.push_back(up);
        if (block == 1) {
            spec.layers.push_back(LayerSpec::conv(1, 0, 1, c));  // 224 -> 56 reducer
        }
        spec.layers.push_back(LayerSpec::conv(3, 1, 1, c));
        spec.layers.push_back(LayerSpec::conv(3, 1, 1, c));
    }
    spec.layers.push_back(LayerSpec::to_rgb());
    return spec;
}

NetworkSpec builtin_critic_spec(int stage, bool verbatim) {
    check_stage(stage);
    NetworkSpec spec;
    spec.name = verbatim ? "critic-verbatim" : "critic";
    spec.stage = stage;
    const long res = stage_resolution(stage);
    spec.input_shape = {3, res, res};
    spec.verbatim = verbatim;
    const auto down = LayerSpec::simple(LayerKind::DownSample);
    const auto mbstd = LayerSpec::simple(LayerKind::MinibatchStdDev, Activation::LeakyReLU);
    const auto score = LayerSpec::conv(1, 0, 1, 1, Activation::Linear);

    if (verbatim) {
        if (stage != kStages) throw Error("the verbatim critic table exists for stage 6 only");
        spec.layers = {
            declared(LayerSpec::conv(7, 0, 1, 14), sq(3, 224), sq(14, 224)),
            declared(LayerSpec::conv(3, 1, 1, 14), sq(14, 224), sq(14, 224)),
            declared(LayerSpec::conv_down(3, 1, 1, 28), sq(14, 224), sq(28, 112)),
            declared(LayerSpec::conv(3, 1, 1, 56), sq(28, 112), sq(56, 112)),
            declared(LayerSpec::conv(3, 1, 1, 56), sq(56, 112), sq(56, 112)),
            declared(down, sq(56, 112), sq(56, 56)),
            declared(LayerSpec::conv(3, 1, 1, 112), sq(56, 56), sq(112, 56)),
            declared(LayerSpec::conv(3, 1, 1, 112), sq(112, 56), sq(112, 56)),
            declared(down, sq(112, 56), sq(112, 28)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(112, 28), sq(224, 28)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(224, 28), sq(224, 28)),
            declared(down, sq(224, 28), sq(224, 14)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(224, 14), sq(224, 14)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(224, 14), sq(224, 14)),
            declared(down, sq(224, 14), sq(224, 7)),
            declared(mbstd, sq(224, 7), sq(225, 7)),
            declared(LayerSpec::conv(3, 1, 1, 224), sq(225, 7), sq(224, 7)),
            declared(LayerSpec::conv_down(3, 1, 1, 224), sq(224, 7), sq(224, 1)),
            declared(score, sq(224, 1), sq(1, 1)),
        };
        return spec;
    }

    // Blocks ordered from the highest input resolution (224) down to 14; a
    // stage-s critic keeps the last s - 1 of them.
    const std::vector<std::vector<LayerSpec>> blocks{
        {LayerSpec::conv(3, 1, 1, 14), LayerSpec::conv_down(3, 1, 1, 28)},
        {LayerSpec::conv(3, 1, 1, 56), LayerSpec::conv(3, 1, 1, 56), down},
        {LayerSpec::conv(3, 1, 1, 112), LayerSpec::conv(3, 1, 1, 112), down},
        {LayerSpec::conv(3, 1, 1, 224), LayerSpec::conv(3, 1, 1, 224), down},
        {LayerSpec::conv(3, 1, 1, 224), LayerSpec::conv(3, 1, 1, 224), down},
    };
    spec.layers.push_back(LayerSpec::conv(7, 3, 1, 14));
    for (std::size_t b = blocks.size() - static_cast<std::size_t>(stage - 1); b < blocks.size(); ++b) {
        spec.layers.insert(spec.layers.end(), blocks[b].begin(), blocks[b].end());
    }
    spec.layers.push_back(mbstd);
    spec.layers.push_back(LayerSpec::conv(3, 1, 1, 224));
    spec.layers.push_back(LayerSpec::conv(7, 0, 1, 224));
    spec.layers.push_back(score);
    return spec;
}

ValidationReport validate_network(const NetworkSpec& spec) {
    ValidationReport report;
    TensorShape current = spec.input_shape;
    if (!current.valid()) {
        report.findings.push_back({0, std::nullopt, current, "invalid network input shape"});
        report.ok = false;
        return report;
    }
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const auto& layer = spec.layers[i];
        if (layer.declared_input && *layer.declared_input != current) {
            report.findings.push_back(
                {i, current, layer.declared_input, "declared input differs from the previous layer's output"});
            current = *layer.declared_input;
        }
        TensorShape out;
        try {
            out = propagate_shape(layer, current);
        } catch (const Error& e) {
            report.findings.push_back({i, std::nullopt, layer.declared_output, e.what()});
            report.trace.emplace_back(std::nullopt);
            if (!layer.declared_output) {
                report.findings.back().note += "; replay stopped";
                break;
            }
            current = *layer.declared_output;
            continue;
        }
        report.trace.emplace_back(out);
        if (layer.declared_output && *layer.declared_output != out) {
            report.findings.push_back({i, out, layer.declared_output, "computed output differs from declared output"});
            current = *layer.declared_output;
        } else {
            current = out;
        }
    }
    report.ok = report.findings.empty();
    return report;
}

TensorShape output_shape(const NetworkSpec& spec) {
    TensorShape current = spec.input_shape;
    for (const auto& layer : spec.layers) current = propagate_shape(layer, current);
    return current;
}

int stage_resolution(int stage) {
    check_stage(stage);
    return 7 << (stage - 1);
}

StageSchedule stage_schedule() {
    StageSchedule schedule;
    for (int s = 1; s <= kStages; ++s) schedule.resolution[static_cast<std::size_t>(s - 1)] = stage_resolution(s);
    schedule.batch_size = {256, 128, 32, 16, 16, 8};
    schedule.epochs = {250, 300, 350, 400, 450, 500};
    schedule.latent_size = static_cast<int>(kLatent);
    schedule.image_channels = 3;
    schedule.n_critic = 5;
    schedule.learning_rate = 1e-3;
    schedule.loss_model = "WGAN-GP";
    return schedule;
}

WganLoss wgan_gp_loss(const std::vector<double>& real_scores, const std::vector<double>& fake_scores,
                      const std::vector<double>& grad_norms, double lambda) {
    if (real_scores.empty() || fake_scores.empty() || grad_norms.empty()) {
        throw Error("wgan_gp_loss: score and gradient-norm lists must be non-empty");
    }
    if (!(lambda >= 0.0)) throw Error("wgan_gp_loss: lambda must be non-negative");
    const auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    double penalty = 0.0;
    for (double g : grad_norms) penalty += (g - 1.0) * (g - 1.0);
    penalty /= static_cast<double>(grad_norms.size());

    const double fake = mean(fake_scores);
    return {fake - mean(real_scores) + lambda * penalty, -fake};
}

}  // namespace rforge::progan
