#include <legendre_hgf/ffhyper.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace legendre_hgf;

TEST(FF2F1, ZeroArgumentGivesZero) {
    const auto f = make_field(13);
    for (std::int64_t a = 0; a < 12; a += 5) {
        const auto spec = make_spec(*f, a, 6, 3, 0);
        EXPECT_EQ(ff_2f1_pointsum(spec), ComplexValue(0.0, 0.0));
        EXPECT_EQ(ff_2f1_charsum(spec), ComplexValue(0.0, 0.0));
    }
}

TEST(FF2F1, DefinitionsAgreeInFive) {
    const auto f = make_field(5);
    const auto spec = make_spec(*f, 2, 2, 0, 2);  // (phi, phi; eps | 2)
    EXPECT_LT(std::abs(ff_2f1_charsum(spec) - ff_2f1_pointsum(spec)), 1e-9);
    // Frozen from the naive oracle: 2/5.
    EXPECT_NEAR(ff_2f1_pointsum(spec).real(), 0.4, 1e-12);
}

TEST(FF2F1, LegendreTraceInThirteenIsBoundedInteger) {
    // -p 2F1(phi, phi; eps | 4) over F_13 is an integer trace term with
    // |a| <= 2 sqrt(13). y^2 = x(x-1)(x-4) has 13 + 1 - a points.
    const auto f = make_field(13);
    const auto v = -13.0 * ff_2f1_pointsum(make_spec(*f, 6, 6, 0, 4));
    const double a = std::round(v.real());
    EXPECT_NEAR(v.real(), a, 1e-9);
    EXPECT_NEAR(v.imag(), 0.0, 1e-9);
    EXPECT_LE(std::abs(a), 2.0 * std::sqrt(13.0));

    std::int64_t affine = 0;
    for (std::uint64_t x = 0; x < 13; ++x) {
        for (std::uint64_t y = 0; y < 13; ++y) {
            if ((y * y) % 13 == x * ((x + 12) % 13) % 13 * ((x + 9) % 13) % 13) ++affine;
        }
    }
    const std::int64_t elliptic_trace = 13 + 1 - (affine + 1);
    // phi(-1) = 1 for p = 13, so a_p = -p 2F1 exactly.
    EXPECT_EQ(static_cast<std::int64_t>(a), elliptic_trace);
}

TEST(FF2F1, PointSumMatchesNaiveOracle) {
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {5ULL, 13ULL, 17ULL, 29ULL}) {
        const auto f = make_field(p);
        const oracle::NaiveCharacters naive(p);
        std::uniform_int_distribution<std::int64_t> ch(0, static_cast<std::int64_t>(p - 2));
        std::uniform_int_distribution<std::int64_t> xs(0, static_cast<std::int64_t>(p - 1));
        for (int i = 0; i < 100; ++i) {
            const std::int64_t a = ch(rng), b = ch(rng), c = ch(rng), x = xs(rng);
            const auto got = ff_2f1_pointsum(make_spec(*f, a, b, c, x));
            const auto want = naive.greene(a, b, c, x);
            EXPECT_LT(std::abs(got - want), 1e-10) << p << " " << a << " " << b << " " << c << " " << x;
        }
    }
}

TEST(FF2F1, MagnitudeSanityInSeventeen) {
    const auto f = make_field(17);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> ch(1, 15);
    std::uniform_int_distribution<std::int64_t> xs(1, 16);
    for (int i = 0; i < 300; ++i) {
        EXPECT_LE(std::abs(ff_2f1_pointsum(make_spec(*f, ch(rng), ch(rng), ch(rng), xs(rng)))), 3.0);
    }
}

TEST(FF2F1, DefinitionEquivalenceExhaustiveInX) {
    std::mt19937_64 rng(101);
    for (std::uint64_t p : {5ULL, 13ULL, 37ULL, 101ULL}) {
        const auto f = make_field(p);
        const JacobiCache cache(*f);
        std::uniform_int_distribution<std::int64_t> ch(0, static_cast<std::int64_t>(p - 2));
        for (int t = 0; t < 6; ++t) {
            const std::int64_t a = ch(rng), b = ch(rng), c = ch(rng);
            for (std::int64_t x = 0; x < static_cast<std::int64_t>(p); ++x) {
                const auto spec = make_spec(*f, a, b, c, x);
                EXPECT_LT(std::abs(ff_2f1_charsum(spec, &cache) - ff_2f1_pointsum(spec)), definition_tolerance(p));
            }
        }
    }
}

TEST(FF2F1, CostContract) {
    const auto f = make_field(101);
    KernelStats stats;
    (void)ff_2f1_pointsum(make_spec(*f, 3, 7, 11, 5), &stats);
    EXPECT_EQ(stats.char_terms, 101U);
    (void)ff_2f1_charsum(make_spec(*f, 3, 7, 11, 5), nullptr, &stats);
    EXPECT_EQ(stats.binom_lookups, 200U);
}

TEST(InversionTransform, Instances) {
    EXPECT_LT(inversion_transform_residual(make_spec(*make_field(5), 2, 2, 0, 2)), 1e-9);
    const auto f13 = make_field(13);
    const auto psi = quartic_character(*f13);
    const FF2F1Spec spec{psi, psi.pow(3), psi.pow(2), f13->element(3)};
    EXPECT_EQ(spec.A.k, 3U);
    EXPECT_LT(inversion_transform_residual(spec), 1e-9);
}

TEST(InversionTransform, ZeroArgumentRejected) {
    try {
        inversion_transform_residual(make_spec(*make_field(13), 1, 2, 3, 0));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::zero_argument);
    }
}

TEST(InversionTransform, HoldsAcrossRandomSpecs) {
    std::mt19937_64 rng(2);
    for (std::uint64_t p : {7ULL, 11ULL, 29ULL, 101ULL, 1009ULL}) {
        const auto f = make_field(p);
        std::uniform_int_distribution<std::int64_t> ch(0, static_cast<std::int64_t>(p - 2));
        std::uniform_int_distribution<std::int64_t> xs(1, static_cast<std::int64_t>(p - 1));
        for (int i = 0; i < 60; ++i) {
            EXPECT_LT(inversion_transform_residual(make_spec(*f, ch(rng), ch(rng), ch(rng), xs(rng))),
                      definition_tolerance(p));
        }
    }
}

TEST(FF2F1, ToleranceScaling) {
    EXPECT_DOUBLE_EQ(definition_tolerance(13), 1e-8);
    EXPECT_DOUBLE_EQ(definition_tolerance(10000), 1e-8);
    EXPECT_DOUBLE_EQ(definition_tolerance(20000), 2e-8);
}
