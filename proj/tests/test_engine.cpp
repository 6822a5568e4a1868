// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>

#include "support.hpp"

namespace mellin
{
namespace
{

using sampling::Rng;
using testing::rel_err;

const SpectralParams kA4 = SpectralParams::from_full({0.1, 0.2, -0.05, -0.25});
const MellinPoint kS4({2.0, 2.0, 2.0});
// Independent 2D quadrature at 18 digits.
constexpr double kT4Reference = 0.023411541774944736;

TEST(T2, Anchors)
{
    EXPECT_REL(t2(SpectralParams::from_leading({0.0}), MellinPoint({1.0})), complex(1.0), 1e-15);
    EXPECT_REL(t2(SpectralParams::from_leading({0.3}), MellinPoint({1.2})),
               complex(std::tgamma(1.5) * std::tgamma(0.9)), 1e-14);
    const double t = 0.8;
    EXPECT_REL(t2(SpectralParams::from_leading({complex(0.0, t)}), MellinPoint({1.0})),
               complex(0.40985265287975206481), 1e-13);
}

TEST(T2, RejectsWrongDimension)
{
    EXPECT_THROW(t2(SpectralParams::from_leading({0.1, 0.2}), MellinPoint({1.0, 1.0})), PreconditionViolation);
    EXPECT_THROW(t2(SpectralParams::from_leading({0.1}), MellinPoint({1.0, 1.0})), PreconditionViolation);
}

TEST(T3, ClosedFormAnchor)
{
    EXPECT_REL(t3_barnes(SpectralParams::from_leading({0.0, 0.0}), MellinPoint({1.0, 1.0})), complex(1.0), 1e-14);
}

TEST(T3, QuadratureMatchesReference)
{
    const auto a = SpectralParams::from_leading({complex(0.1, 0.2), complex(-0.05, 0.3)});
    const MellinPoint s({complex(1.2, 0.1), complex(1.5, -0.2)});
    const complex ref(0.21835505169346295237, 0.0044491669267445496574);
    EXPECT_REL(t3_barnes(a, s), ref, 1e-13);
    const auto ev = eval_t(a, s);
    EXPECT_REL(ev.value, ref, 1e-8);
    EXPECT_LT(ev.est_rel_error, 1e-6);
    ASSERT_EQ(ev.contours.outer.size(), 1u);
}

TEST(T3Property, QuadratureMatchesClosedForm)
{
    Rng rng(31);
    for (int i = 0; i < 8; ++i)
    {
        const auto a = SpectralParams::from_leading({rng.in_box(-0.1, 0.1, -0.5, 0.5), rng.in_box(-0.1, 0.1, -0.5, 0.5)});
        const MellinPoint s({rng.in_box(0.8, 2.0, -1.0, 1.0), rng.in_box(0.8, 2.0, -1.0, 1.0)});
        EXPECT_REL(eval_t(a, s).value, t3_barnes(a, s), 1e-7);
    }
}

TEST(T4, MatchesIndependentReference)
{
    const auto ev = eval_t(kA4, kS4);
    EXPECT_REL(ev.value, complex(kT4Reference), 1e-8);
    EXPECT_LT(std::abs(ev.value.imag()), 1e-12);
}

TEST(T4, RecursivePathAgreesWithBarnesInner)
{
    QuadratureConfig cfg;
    cfg.inner = InnerTransform::recursive;
    cfg.step = 0.1;
    cfg.height = 30.0;
    const auto ev = eval_t(kA4, kS4, cfg);
    EXPECT_TRUE(ev.contours.inner.has_value());
    EXPECT_REL(ev.value, complex(kT4Reference), 1e-6);
}

TEST(T4, SpecialPointUnitIdentity)
{
    // At a = 0 the first s1 rule gives T(1,1,1) = 2 T(2,1,1) + T(2,1,2).
    const auto a = SpectralParams::from_leading({0.0, 0.0, 0.0});
    const complex lhs = eval_t(a, MellinPoint({1.0, 1.0, 1.0})).value;
    const complex rhs = 2.0 * eval_t(a, MellinPoint({2.0, 1.0, 1.0})).value + eval_t(a, MellinPoint({2.0, 1.0, 2.0})).value;
    EXPECT_REL(lhs, rhs, 1e-8);
}

TEST(T4Property, SymmetricInA)
{
    Rng rng(32);
    const auto a = SpectralParams::from_leading({rng.in_box(-0.1, 0.1, -0.3, 0.3), rng.in_box(-0.1, 0.1, -0.3, 0.3),
                                                 rng.in_box(-0.1, 0.1, -0.3, 0.3)});
    const MellinPoint s({complex(1.5, 0.2), complex(1.3, -0.1), complex(1.7, 0.3)});
    const complex base = eval_t(a, s).value;
    for (const auto& perm : std::array<std::array<int, 4>, 3>{{{1, 0, 2, 3}, {3, 2, 1, 0}, {2, 3, 0, 1}}})
    {
        EXPECT_REL(eval_t(a.permuted(perm), s).value, base, 1e-8);
    }
}

TEST(T4Property, ReversalAndConjugation)
{
    const auto a = SpectralParams::from_leading({complex(0.05, 0.2), complex(-0.08, -0.1), complex(0.02, 0.25)});
    const MellinPoint s({complex(1.5, 0.2), complex(1.3, -0.1), complex(1.7, 0.3)});
    const complex base = eval_t(a, s).value;
    EXPECT_REL(eval_t(a.negated(), s.reversed()).value, base, 1e-8);
    std::vector<complex> ac;
    for (const auto& v : a.values())
    {
        ac.push_back(std::conj(v));
    }
    std::vector<complex> sc;
    for (const auto& v : s.values())
    {
        sc.push_back(std::conj(v));
    }
    EXPECT_REL(eval_t(SpectralParams::from_full(ac), MellinPoint(sc)).value, std::conj(base), 1e-8);
}

TEST(Engine, RefinementSelfConsistency)
{
    QuadratureConfig coarse;
    coarse.step = 0.2;
    coarse.max_refinements = 0;
    const auto a = SpectralParams::from_leading({complex(0.1, 0.2), complex(-0.05, 0.3)});
    const MellinPoint s({complex(1.2, 0.1), complex(1.5, -0.2)});
    const auto c = eval_t(a, s, coarse);
    const auto f = eval_t(a, s);
    EXPECT_LT(rel_err(c.value, f.value), 1e-4);
    EXPECT_EQ(c.refinements, 0);
}

TEST(Engine, ExplicitContourOutsideRegionRaises)
{
    QuadratureConfig cfg;
    cfg.contour_re = {100.0};
    EXPECT_THROW(eval_t(SpectralParams::from_leading({0.0, 0.0}), MellinPoint({1.0, 1.0}), cfg), ContourError);
}

TEST(Engine, NoAdmissibleContourRaises)
{
    // Re s1 far left of every pole strip.
    EXPECT_THROW(eval_t(SpectralParams::from_leading({0.0, 0.0, 0.0}), MellinPoint({-3.5, 1.0, 1.0})), ContourError);
}

TEST(Engine, RejectsInvalidConfig)
{
    QuadratureConfig cfg;
    cfg.step = -1.0;
    EXPECT_THROW(eval_t(SpectralParams::from_leading({0.0}), MellinPoint({1.0}), cfg), PreconditionViolation);
}

TEST(Engine, ContourPlacementHonoursMargin)
{
    const auto p = place_contours(kA4, kS4, QuadratureConfig{});
    ASSERT_TRUE(p.has_value());
    ASSERT_EQ(p->outer.size(), 2u);
    // Re z1 must sit right of -s1, left of a2, a3, a4.
    EXPECT_GE(p->outer[0], -2.0 + contour_margin);
    EXPECT_LE(p->outer[0], -0.25 - contour_margin);
}

TEST(SpectralParams, InnerShiftSumsToZero)
{
    const auto a = SpectralParams::from_leading({complex(0.3, 0.1), complex(-0.2, 0.4), complex(0.05, -0.3)});
    const auto b = a.shifted();
    ASSERT_EQ(b.n(), 3);
    complex sum = 0.0;
    for (int j = 0; j < 3; ++j)
    {
        EXPECT_REL(b[j], a[j + 1] + a[0] / 3.0, 1e-15);
        sum += b[j];
    }
    EXPECT_LT(std::abs(sum), 1e-15);
    EXPECT_THROW(SpectralParams::from_full({0.1, 0.2}), PreconditionViolation);
}

TEST(Bessel, ExponentialIntegralReferences)
{
    EXPECT_REL(bessel_k_exp(0.5, 1.0), complex(0.46106850444789455844), 1e-13);
    EXPECT_REL(bessel_k_exp(0.0, 2.0), complex(0.11389387274953343565), 1e-13);
    EXPECT_REL(bessel_k_exp(0.0, 5.0), complex(0.0036910983340425942747), 1e-13);
    EXPECT_REL(bessel_k_exp(complex(1.0 / 3.0, 1.0), 0.7), complex(0.40419967211376649273, 0.14411799544612434793),
               1e-12);
    EXPECT_REL(bessel_k_exp(0.6, pi), complex(0.031028959207216202528), 1e-13);
    // K_{1/2}(y) = sqrt(pi / 2y) e^{-y}.
    EXPECT_REL(bessel_k_exp(0.5, 3.0), complex(std::sqrt(pi / 6.0) * std::exp(-3.0)), 1e-13);
}

TEST(Bessel, MellinBarnesMatchesExponentialIntegral)
{
    for (const auto& [nu, y] : std::array<std::pair<complex, double>, 4>{
             {{0.5, 1.0}, {complex(1.0 / 3.0, 1.0), 0.7}, {0.0, 5.0}, {complex(0.0, 0.25), 1.5}}})
    {
        EXPECT_REL(bessel_k_mb(nu, y).value, bessel_k_exp(nu, y), 1e-9);
    }
    EXPECT_THROW(bessel_k_mb(0.5, -1.0), PreconditionViolation);
}

TEST(Whittaker2, InverseMellinMatchesBessel)
{
    const auto c = w2_check(0.0, 1.0);
    EXPECT_REL(c.lhs, complex(0.0018331687218087406238), 1e-12);
    EXPECT_LT(c.rel_diff, 1e-8);
    EXPECT_LT(w2_check(complex(0.0, 0.25), 1.0).rel_diff, 1e-8);
    EXPECT_LT(w2_check(0.3, 0.5).rel_diff, 1e-8);
}

} // namespace
} // namespace mellin
