// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "rforge/random.hpp"

#include <algorithm>

#include "rforge/error.hpp"

namespace rforge {

std::size_t RandomStream::index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return std::min(i, n - 1);
}

double SeededStream::uniform() {
    // 53 high bits -> [0, 1), independent of the standard library's distributions.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double ScriptedStream::uniform() {
    if (next_ >= values_.size()) {
        throw Error("scripted random stream exhausted after " + std::to_string(next_) + " draws");
    }
    return values_[next_++];
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace rforge
