// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Shape model of the progressive GAN used to synthesize minority-class images:
// per-layer C x H x W propagation, stage-wise generator/critic construction,
// the progression schedule and the WGAN-GP loss.

namespace rforge::progan {

struct TensorShape {
    long channels = 1;
    long height = 1;
    long width = 1;

    bool valid() const noexcept { return channels >= 1 && height >= 1 && width >= 1; }
    bool operator==(const TensorShape&) const = default;
};

std::string to_string(const TensorShape& shape);

enum class LayerKind { Conv2D, TConv2D, UpSample, DownSample, MinibatchStdDev, ToRGB, ConvThenDownSample };
enum class Activation { LeakyReLU, Linear, None };

std::string_view to_string(LayerKind kind) noexcept;
std::string_view to_string(Activation activation) noexcept;
std::optional<LayerKind> parse_layer_kind(std::string_view text) noexcept;
std::optional<Activation> parse_activation(std::string_view text) noexcept;

/// True for kinds that carry kernel/padding/stride and out_channels.
bool is_conv(LayerKind kind) noexcept;

struct LayerSpec {
    LayerKind kind = LayerKind::Conv2D;
    long kernel = 0;
    long padding = 0;
    long stride = 1;
    long out_channels = 0;
    Activation activation = Activation::None;
    /// Shapes as written in a transcribed table; checked by validate_network.
    std::optional<TensorShape> declared_input;
    std::optional<TensorShape> declared_output;

    static LayerSpec conv(long k, long p, long s, long out, Activation act = Activation::LeakyReLU);
    static LayerSpec tconv(long k, long p, long s, long out, Activation act = Activation::LeakyReLU);
    static LayerSpec conv_down(long k, long p, long s, long out, Activation act = Activation::LeakyReLU);
    static LayerSpec to_rgb();
    static LayerSpec simple(LayerKind kind, Activation act = Activation::None);
};

struct NetworkSpec {
    std::string name;
    int stage = 6;
    TensorShape input_shape;
    std::vector<LayerSpec> layers;
    bool verbatim = false;
};

/// Output shape of one layer. Throws rforge::Error for a non-positive result
/// or a downsample of odd height/width.
TensorShape propagate_shape(const LayerSpec& layer, const TensorShape& input);

/// Generator for `stage` (1..6). Verbatim is the stage-6 table as published,
/// including its channel jump at 28x28; the repaired chain inserts a 1x1
/// channel-reducing conv there. Earlier stages drop the highest-resolution
/// blocks, keeping the latent-input block and ToRGB.
NetworkSpec builtin_generator_spec(int stage, bool verbatim = false);

/// Critic for `stage` (1..6). The repaired chain uses K7 P3 for the input conv
/// and a K7 P0 conv for the final 7x7 -> 1x1 reduction.
NetworkSpec builtin_critic_spec(int stage, bool verbatim = false);

struct Finding {
    std::size_t layer_index = 0;
    std::optional<TensorShape> expected_shape;
    std::optional<TensorShape> declared_shape;
    std::string note;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Finding> findings;
    /// Output shape after each layer (empty entry when propagation failed).
    std::vector<std::optional<TensorShape>> trace;
};

/// Replays propagate_shape over the chain. A declared input that differs from
/// the propagated shape, a declared output that differs from the computed one,
/// and a propagation error each produce one finding; replay then continues
/// from the declared shape so one defect yields one finding.
ValidationReport validate_network(const NetworkSpec& spec);

/// Output shape of the whole chain; throws if any layer fails.
TensorShape output_shape(const NetworkSpec& spec);

struct StageSchedule {
    std::array<int, 6> resolution{};
    std::array<int, 6> batch_size{};
    std::array<int, 6> epochs{};
    int latent_size = 0;
    int image_channels = 0;
    int n_critic = 0;
    double learning_rate = 0.0;
    std::string loss_model;
};

StageSchedule stage_schedule();

/// Resolution at a 1-based stage: 7 * 2^(stage - 1).
int stage_resolution(int stage);

struct WganLoss {
    double critic_loss = 0.0;
    double generator_loss = 0.0;
};

inline constexpr double kDefaultGradientPenalty = 10.0;

/// critic    = mean(fake) - mean(real) + lambda * mean((norm - 1)^2)
/// generator = -mean(fake)
WganLoss wgan_gp_loss(const std::vector<double>& real_scores, const std::vector<double>& fake_scores,
                      const std::vector<double>& grad_norms, double lambda = kDefaultGradientPenalty);

}  // namespace rforge::progan
