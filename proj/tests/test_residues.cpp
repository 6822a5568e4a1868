// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

namespace mellin
{
namespace
{

using testing::rel_err;

const SpectralParams kParams =
    SpectralParams::from_leading({complex(0.13, 0.05), complex(-0.31, 0.1), complex(0.22, -0.07)});
const Spectral4 kA = spectral4(kParams);
const complex kS1(0.45, 0.1);
const complex kS2(0.55, -0.2);
const complex kS3(0.35, 0.15);

QuadratureConfig residue_cfg()
{
    QuadratureConfig cfg;
    cfg.step = 0.1;
    return cfg;
}

Spectral4 negated(const Spectral4& a)
{
    return {-a[0], -a[1], -a[2], -a[3]};
}

template <typename F>
complex contour(int variable, complex center, F&& f)
{
    const double radius = default_radius_fraction * nearest_other_pole(kParams, variable, center);
    return circle_integral(std::forward<F>(f), center, radius);
}

TEST(Genericity, GapAndFlag)
{
    EXPECT_TRUE(is_generic(kA, 3));
    const Spectral4 bad{0.1, 1.1, -0.6, -0.6};
    EXPECT_LT(genericity_gap(bad, 0), 1e-12);
    EXPECT_FALSE(is_generic(bad, 0));
}

TEST(SingleResidue, S1MatchesContourOfContinuedT)
{
    for (unsigned delta = 0; delta <= 1; ++delta)
    {
        const complex numeric = numeric_residue(kParams, {1, 3, 0, delta}, MellinPoint({0.0, kS2, kS3}), 0.0,
                                                residue_cfg());
        EXPECT_LT(rel_err(numeric, residue_s1(kA, 3, delta, kS2, kS3)), 1e-5) << "delta = " << delta;
    }
}

TEST(SingleResidue, S2MatchesContourOfContinuedT)
{
    const complex numeric =
        numeric_residue(kParams, {2, 2, 4, 0}, MellinPoint({kS1, 0.0, kS3}), 0.0, residue_cfg());
    EXPECT_LT(rel_err(numeric, residue_s2(kA, 2, 4, 0, kS1, kS3)), 1e-5);
}

TEST(SingleResidue, S3MatchesContourOfContinuedT)
{
    const complex numeric =
        numeric_residue(kParams, {3, 1, 0, 1}, MellinPoint({kS1, kS2, 0.0}), 0.0, residue_cfg());
    EXPECT_LT(rel_err(numeric, residue_s3(kA, 1, 1, kS1, kS2)), 1e-5);
}

TEST(SingleResidueProperty, S2SymmetricInIndexPair)
{
    for (unsigned delta = 0; delta <= 3; ++delta)
    {
        for (int m = 1; m <= 4; ++m)
        {
            for (int n = m + 1; n <= 4; ++n)
            {
                EXPECT_LT(rel_err(residue_s2(kA, m, n, delta, kS1, kS3), residue_s2(kA, n, m, delta, kS1, kS3)),
                          1e-12)
                    << m << n << " delta = " << delta;
            }
        }
    }
}

// T_a(s1, s2, s3) = T_{-a}(s3, s2, s1) carries s1-poles to s3-poles.
TEST(SingleResidueProperty, ReversalExchangesS1AndS3)
{
    const Spectral4 b = negated(kA);
    for (unsigned delta = 0; delta <= 3; ++delta)
    {
        for (int m = 1; m <= 4; ++m)
        {
            EXPECT_LT(rel_err(residue_s1(kA, m, delta, kS2, kS3), residue_s3(b, m, delta, kS3, kS2)), 1e-12);
        }
        for (int m = 1; m <= 4; ++m)
        {
            for (int n = m + 1; n <= 4; ++n)
            {
                std::array<int, 2> pq{};
                std::size_t i = 0;
                for (int k = 1; k <= 4; ++k)
                {
                    if (k != m && k != n)
                    {
                        pq[i++] = k;
                    }
                }
                EXPECT_LT(rel_err(residue_s2(kA, m, n, delta, kS1, kS3), residue_s2(b, pq[0], pq[1], delta, kS3, kS1)),
                          1e-12);
            }
        }
    }
}

TEST(SingleResidue, FiniteWhereGammaFactorIsMissing)
{
    // T has an s3 pole at a_m - k but the s1 residue at -a_m lost it.
    for (unsigned k = 0; k <= 2; ++k)
    {
        EXPECT_TRUE(std::isfinite(std::abs(residue_s1(kA, 2, 0, kS2, kA[1] - static_cast<double>(k)))));
        EXPECT_TRUE(std::isfinite(std::abs(residue_s2(kA, 1, 3, 0, kS1, kA[0] - static_cast<double>(k)))));
    }
}

TEST(SingleResidue, NonGenericRaisesGammaPole)
{
    const Spectral4 bad{0.1, 0.1, -0.3, 0.1};
    EXPECT_THROW(residue_s1(bad, 1, 0, kS2, kS3), GammaPole);
    EXPECT_THROW(residue_s1(kA, 0, 0, kS2, kS3), PreconditionViolation);
    EXPECT_THROW(residue_s2(kA, 2, 2, 0, kS1, kS3), PreconditionViolation);
}

TEST(DoubleResidue, MatchesContoursOfSingleResidues)
{
    for (unsigned d1 = 0; d1 <= 2; ++d1)
    {
        for (unsigned d2 = 0; d2 <= 2; ++d2)
        {
            const complex p1 = -kA[0] - static_cast<double>(d1);
            const complex x12 = contour(1, p1, [&](complex z) { return residue_s2(kA, 1, 4, d2, z, kS3); });
            EXPECT_LT(rel_err(x12, residue_s1s2(kA, d1, d2, kS3)), 1e-9);

            const complex p3 = kA[1] - static_cast<double>(d2);
            const complex x13 = contour(3, p3, [&](complex z) { return residue_s1(kA, 1, d1, kS2, z); });
            EXPECT_LT(rel_err(x13, residue_s1s3(kA, d1, d2, kS2)), 1e-9);

            const complex q3 = kA[2] - static_cast<double>(d2);
            const complex x23 = contour(3, q3, [&](complex z) { return residue_s2(kA, 1, 4, d1, kS1, z); });
            EXPECT_LT(rel_err(x23, residue_s2s3(kA, d1, d2, kS1)), 1e-9);
        }
    }
}

TEST(DoubleResidue, OrderOfResiduesDoesNotMatter)
{
    for (unsigned d1 = 0; d1 <= 1; ++d1)
    {
        for (unsigned d2 = 0; d2 <= 1; ++d2)
        {
            const complex p2 = -kA[0] - kA[3] - static_cast<double>(d2);
            const complex y12 = contour(2, p2, [&](complex z) { return residue_s1(kA, 1, d1, z, kS3); });
            EXPECT_LT(rel_err(y12, residue_s1s2(kA, d1, d2, kS3)), 1e-9);
        }
    }
}

TEST(TripleResidue, ContourAndLimitOfDoubleResidue)
{
    for (unsigned d1 = 0; d1 <= 1; ++d1)
    {
        for (unsigned d2 = 0; d2 <= 1; ++d2)
        {
            for (unsigned d3 = 0; d3 <= 1; ++d3)
            {
                const complex c3 = kA[2] - static_cast<double>(d3);
                const complex want = residue_s1s2s3(kA, d1, d2, d3);
                const complex viaContour =
                    contour(3, c3, [&](complex z) { return residue_s1s2(kA, d1, d2, z); });
                EXPECT_LT(rel_err(viaContour, want), 1e-9);
                const double eps = 1e-7;
                EXPECT_LT(rel_err(eps * residue_s1s2(kA, d1, d2, c3 + eps), want), 1e-5);
            }
        }
    }
}

TEST(ResidueProperty, RelabelingIndicesLeavesValuesFixed)
{
    const std::array<int, 4> sigma{2, 0, 3, 1};
    Spectral4 b{};
    std::array<int, 5> where{};
    for (std::size_t i = 0; i < 4; ++i)
    {
        b[i] = kA[static_cast<std::size_t>(sigma[i])];
        where[static_cast<std::size_t>(sigma[i] + 1)] = static_cast<int>(i) + 1;
    }
    for (unsigned delta = 0; delta <= 2; ++delta)
    {
        for (int m = 1; m <= 4; ++m)
        {
            EXPECT_LT(rel_err(residue_s1(b, where[m], delta, kS2, kS3), residue_s1(kA, m, delta, kS2, kS3)), 1e-12);
            EXPECT_LT(rel_err(residue_s3(b, where[m], delta, kS1, kS2), residue_s3(kA, m, delta, kS1, kS2)), 1e-12);
        }
    }
}

TEST(Degrees, BoundsAndNames)
{
    EXPECT_EQ(degree_bound(ResiduePolynomial::f, 2, 1), 5u);
    EXPECT_EQ(degree_bound(ResiduePolynomial::g, 1, 3), 5u);
    EXPECT_EQ(degree_bound(ResiduePolynomial::h, 1, 3), 7u);
    EXPECT_EQ(residue_polynomial_name(ResiduePolynomial::h), "h");
}

TEST(DegreesProperty, CertifiedWithinBound)
{
    DegreeLine line;
    line.a0 = kA;
    line.x0 = complex(0.4, 0.1);
    line.da = {complex(0.1, 0.02), complex(-0.05, 0.03), complex(0.08, -0.04), complex(-0.13, -0.01)};
    for (ResiduePolynomial w : {ResiduePolynomial::f, ResiduePolynomial::g, ResiduePolynomial::h})
    {
        for (unsigned i = 0; i <= 2; ++i)
        {
            for (unsigned j = 0; j <= 2; ++j)
            {
                const auto cert = certify_degree(w, i, j, line);
                EXPECT_TRUE(cert.ok) << residue_polynomial_name(w) << i << j << " degree " << cert.degree;
                EXPECT_EQ(cert.coefficient_magnitudes.size(), cert.bound + 6);
                if (i == 0 && j == 0)
                {
                    EXPECT_EQ(cert.degree, 0);
                }
            }
        }
    }
}

TEST(Degrees, LineMustKeepTraceZero)
{
    DegreeLine line;
    line.a0 = kA;
    line.x0 = complex(0.4, 0.1);
    line.da = {complex(0.1, 0.0), complex(-0.1, 0.0), 0.0, 0.0};
    EXPECT_THROW(certify_degree(ResiduePolynomial::f, 0, 0, DegreeLine{0.4, 1.0, kA, {0.1, 0.0, 0.0, 0.0}}),
                 PreconditionViolation);
    EXPECT_NO_THROW(certify_degree(ResiduePolynomial::f, 1, 1, line));
}

} // namespace
} // namespace mellin
