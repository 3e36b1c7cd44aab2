// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include <atomic>
#include <cstdlib>
#include <string>

#include "rforge/error.hpp"
#include "rforge/kernels.hpp"

namespace rforge::kernels {

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t) noexcept;
    double (*sum_squares)(const double*, std::size_t) noexcept;
    void (*axpy)(double, const double*, double*, std::size_t) noexcept;
    void (*scale)(double, double*, std::size_t) noexcept;
};

constexpr Table kScalar{scalar::dot, scalar::sum_squares, scalar::axpy, scalar::scale};
#if defined(RFORGE_HAVE_AVX2)
constexpr Table kAvx2{avx2::dot, avx2::sum_squares, avx2::axpy, avx2::scale};
#endif
#if defined(RFORGE_HAVE_NEON)
constexpr Table kNeon{neon::dot, neon::sum_squares, neon::axpy, neon::scale};
#endif

bool cpu_has_avx2() noexcept {
#if defined(RFORGE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Table& table_for(Isa isa) noexcept {
    switch (isa) {
#if defined(RFORGE_HAVE_AVX2)
        case Isa::avx2:
            return kAvx2;
#endif
#if defined(RFORGE_HAVE_NEON)
        case Isa::neon:
            return kNeon;
#endif
        default:
            return kScalar;
    }
}

Isa detect() noexcept {
    if (const char* forced = std::getenv("REBALANCE_FORGE_SIMD")) {
        const std::string name{forced};
        if (name == "scalar") return Isa::scalar;
        if (name == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
        if (name == "neon" && isa_available(Isa::neon)) return Isa::neon;
    }
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
        default:
            return "scalar";
    }
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
            return cpu_has_avx2();
        case Isa::neon:
#if defined(RFORGE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw Error("SIMD variant '" + std::string(isa_name(isa)) + "' is not available on this CPU");
    }
    current().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error("dot: length mismatch");
    return table_for(active_isa()).dot(a.data(), b.data(), a.size());
}

double sum_squares(std::span<const double> x) {
    return table_for(active_isa()).sum_squares(x.data(), x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw Error("axpy: length mismatch");
    table_for(active_isa()).axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) {
    table_for(active_isa()).scale(alpha, x.data(), x.size());
}

}  // namespace rforge::kernels
