// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace rforge {

/// Source of uniform variates in [0, 1). Every stochastic decision in the
/// optimizer is derived from this one primitive so that a recorded stream can
/// replay a run exactly.
class RandomStream {
public:
    virtual ~RandomStream() = default;

    virtual double uniform() = 0;

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n);
};

/// mt19937_64-backed stream.
class SeededStream final : public RandomStream {
public:
    explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

    using RandomStream::uniform;
    double uniform() override;

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Replays a fixed list of variates; throws rforge::Error once exhausted.
class ScriptedStream final : public RandomStream {
public:
    explicit ScriptedStream(std::vector<double> values) : values_(std::move(values)) {}

    using RandomStream::uniform;
    double uniform() override;

    std::size_t consumed() const noexcept { return next_; }

private:
    std::vector<double> values_;
    std::size_t next_ = 0;
};

/// Derives an independent child seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace rforge
