// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense double-precision kernels used by the classifier and the optimizer.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, a vector variant (AVX2 on x86-64, NEON on aarch64). The active
// variant is chosen once at startup from the CPU features and can be pinned
// with REBALANCE_FORGE_SIMD=scalar|avx2|neon or set_isa().
//
// Element-wise kernels (axpy, scale) are bit-identical across variants.
// Reductions (dot, sum_squares) differ only by summation order.

namespace rforge::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// ISA currently used by the free functions below.
Isa active_isa() noexcept;

/// True when `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Pins the dispatch target. Throws rforge::Error if unavailable.
void set_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> x);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// x *= alpha
void scale(double alpha, std::span<double> x);

// Per-ISA entry points; exposed for equivalence tests and benchmarks.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
}  // namespace neon

}  // namespace rforge::kernels
