// Copyright (C) 2026 rebalance-forge contributors
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rforge/error.hpp"
#include "rforge/kernels.hpp"

using namespace rforge;
using kernels::Isa;

namespace {

struct Variant {
    Isa isa;
    double (*dot)(const double*, const double*, std::size_t) noexcept;
    double (*sum_squares)(const double*, std::size_t) noexcept;
    void (*axpy)(double, const double*, double*, std::size_t) noexcept;
    void (*scale)(double, double*, std::size_t) noexcept;
};

std::vector<Variant> vector_variants() {
    std::vector<Variant> out;
#if defined(__x86_64__)
    if (kernels::isa_available(Isa::avx2)) {
        out.push_back({Isa::avx2, kernels::avx2::dot, kernels::avx2::sum_squares, kernels::avx2::axpy,
                       kernels::avx2::scale});
    }
#endif
#if defined(__aarch64__)
    if (kernels::isa_available(Isa::neon)) {
        out.push_back({Isa::neon, kernels::neon::dot, kernels::neon::sum_squares, kernels::neon::axpy,
                       kernels::neon::scale});
    }
#endif
    return out;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> dist(0.0, 3.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

// Long double accumulation as the reference for reductions.
long double reference_dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
    return s;
}

}  // namespace

TEST(Kernels, ScalarMatchesReference) {
    std::mt19937_64 rng(7);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto a = random_vector(rng, n);
        const auto b = random_vector(rng, n);
        long double mag = 0;
        for (std::size_t i = 0; i < n; ++i) mag += std::fabs(a[i] * b[i]);
        EXPECT_NEAR(kernels::scalar::dot(a.data(), b.data(), n), static_cast<double>(reference_dot(a, b)),
                    1e-13 * static_cast<double>(mag) + 1e-300);
        EXPECT_NEAR(kernels::scalar::sum_squares(a.data(), n), static_cast<double>(reference_dot(a, a)),
                    1e-13 * static_cast<double>(reference_dot(a, a)) + 1e-300);
    }
}

TEST(Kernels, VectorVariantsAgreeWithScalar) {
    const auto variants = vector_variants();
    if (variants.empty()) GTEST_SKIP() << "no vector ISA on this machine";
    std::mt19937_64 rng(11);
    for (const auto& v : variants) {
        for (std::size_t n = 0; n < 131; ++n) {
            const auto a = random_vector(rng, n);
            const auto b = random_vector(rng, n);
            long double mag = 0;
            for (std::size_t i = 0; i < n; ++i) mag += std::fabs(a[i] * b[i]);
            EXPECT_NEAR(v.dot(a.data(), b.data(), n), kernels::scalar::dot(a.data(), b.data(), n),
                        1e-13 * static_cast<double>(mag) + 1e-300)
                << kernels::isa_name(v.isa) << " n=" << n;
            const double ss = kernels::scalar::sum_squares(a.data(), n);
            EXPECT_NEAR(v.sum_squares(a.data(), n), ss, 1e-13 * ss + 1e-300);

            // Element-wise kernels are bit-identical (no fused multiply-add).
            auto y_ref = b;
            auto y_vec = b;
            kernels::scalar::axpy(0.37, a.data(), y_ref.data(), n);
            v.axpy(0.37, a.data(), y_vec.data(), n);
            EXPECT_EQ(y_ref, y_vec);
            auto s_ref = a;
            auto s_vec = a;
            kernels::scalar::scale(-1.25, s_ref.data(), n);
            v.scale(-1.25, s_vec.data(), n);
            EXPECT_EQ(s_ref, s_vec);
        }
    }
}

TEST(Kernels, DispatchCanBePinned) {
    const Isa original = kernels::active_isa();
    kernels::set_isa(Isa::scalar);
    EXPECT_EQ(kernels::active_isa(), Isa::scalar);
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{4, 5, 6};
    EXPECT_EQ(kernels::dot(a, b), 32.0);
    kernels::set_isa(original);
    EXPECT_EQ(kernels::active_isa(), original);
}

TEST(Kernels, UnavailableIsaIsRejected) {
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (!kernels::isa_available(isa)) {
            EXPECT_THROW(kernels::set_isa(isa), Error);
        }
    }
}

TEST(Kernels, SpanLengthMismatchThrows) {
    std::vector<double> a(3), b(4);
    EXPECT_THROW(kernels::dot(a, b), Error);
    EXPECT_THROW(kernels::axpy(1.0, a, b), Error);
}
