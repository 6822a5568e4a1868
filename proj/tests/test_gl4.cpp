// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>

#include "support.hpp"

namespace mellin
{
namespace
{

using sampling::Rng;

Gl4Point<rational> random_point(Rng& rng)
{
    return Gl4Point<rational>::make({rng.ratio(), rng.ratio(), rng.ratio()}, {rng.ratio(), rng.ratio(), rng.ratio()});
}

TEST(PolyB, Examples)
{
    EXPECT_EQ(poly_b(rational(1), rational(2), rational(3)), 0);
    EXPECT_EQ(poly_b(rational(2), rational(3), rational(1)), 12);
    EXPECT_EQ(poly_b(rational(1), rational(1), rational(1)), 2);
    EXPECT_EQ(poly_b(rational(1, 2), rational(0), rational(-1, 2)), 0);
}

TEST(PolyCProperty, ThreeFormsAgreeExactly)
{
    Rng rng(41);
    for (int i = 0; i < 200; ++i)
    {
        const auto pt = random_point(rng);
        const rational p = rng.ratio();
        const rational q = rng.ratio();
        const rational c = poly_c(pt.a, p, q);
        EXPECT_EQ(c, poly_c_form1(pt.a, p, q));
        EXPECT_EQ(c, poly_c_form2(pt.a, p, q));
    }
}

TEST(PolyCProperty, InvariantUnderPermutingA)
{
    Rng rng(42);
    for (int i = 0; i < 50; ++i)
    {
        const auto pt = random_point(rng);
        const rational p = rng.ratio();
        const rational q = rng.ratio();
        const rational c = poly_c(pt.a, p, q);
        std::array<int, 4> perm{0, 1, 2, 3};
        while (std::next_permutation(perm.begin(), perm.end()))
        {
            std::array<rational, 4> b;
            for (std::size_t k = 0; k < 4; ++k)
            {
                b[k] = pt.a[static_cast<std::size_t>(perm[k])];
            }
            EXPECT_EQ(poly_c(b, p, q), c);
        }
    }
}

TEST(Expansions, UnitPointAtZeroSpectralParameter)
{
    const auto p = Gl4Point<rational>::make({0, 0, 0}, {1, 1, 1});
    const auto e = expansion(Gl4Rule::s1a, p);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[0].shift, (std::array<int, 3>{1, 0, 0}));
    EXPECT_EQ(e[0].coefficient, 2);
    EXPECT_EQ(e[1].shift, (std::array<int, 3>{1, 0, 1}));
    EXPECT_EQ(e[1].coefficient, 1);
}

TEST(Expansions, ShiftsAreNonnegative)
{
    const auto p = Gl4Point<rational>::make({rational(1, 3), rational(-1, 5), rational(2, 7)},
                                            {rational(3, 2), rational(5, 4), rational(7, 3)});
    for (Gl4Rule rule : all_gl4_rules)
    {
        const auto e = expansion(rule, p);
        ASSERT_EQ(e.size(), 2u) << rule_name(rule);
        for (const auto& t : e)
        {
            EXPECT_TRUE(std::all_of(t.shift.begin(), t.shift.end(), [](int v) { return v >= 0; }));
            EXPECT_TRUE(std::any_of(t.shift.begin(), t.shift.end(), [](int v) { return v > 0; }));
        }
    }
    const auto all = expansion(Gl4Rule::all, p);
    for (const auto& t : all)
    {
        EXPECT_TRUE(std::all_of(t.shift.begin(), t.shift.end(), [](int v) { return v > 0; }));
    }
}

TEST(Expansions, HypothesisFailureRaises)
{
    // s1 = -a1 kills the first s1 rule; s2 = 0 kills the second.
    const auto p = Gl4Point<rational>::make({rational(1, 3), rational(1, 5), rational(1, 7)},
                                            {rational(-1, 3), rational(2), rational(3)});
    EXPECT_THROW(expansion(Gl4Rule::s1a, p), DegenerateDenominator);
    const auto q = Gl4Point<rational>::make({rational(1, 3), rational(1, 5), rational(1, 7)},
                                            {rational(2), rational(0), rational(3)});
    EXPECT_THROW(expansion(Gl4Rule::s1b, q), DegenerateDenominator);
    EXPECT_NO_THROW(expansion(Gl4Rule::s1a, q));
}

TEST(Reversal, IsAnInvolution)
{
    Rng rng(43);
    for (int i = 0; i < 20; ++i)
    {
        const auto p = random_point(rng);
        const auto rr = reversal(reversal(p));
        EXPECT_EQ(rr.a, p.a);
        EXPECT_EQ(rr.s, p.s);
    }
}

// Each s3 rule is the image of an s1 or s2 rule under the reversal.
TEST(ReversalProperty, ConjugatesRules)
{
    Rng rng(44);
    const std::array<std::pair<Gl4Rule, Gl4Rule>, 3> pairs{
        {{Gl4Rule::s1a, Gl4Rule::s3a}, {Gl4Rule::s1b, Gl4Rule::s3b}, {Gl4Rule::s2, Gl4Rule::s3c}}};
    for (int i = 0; i < 50; ++i)
    {
        const auto p = random_point(rng);
        for (const auto& [left, right] : pairs)
        {
            try
            {
                const auto e = expansion(right, p);
                const auto f = expansion(left, reversal(p));
                ASSERT_EQ(e.size(), f.size());
                for (std::size_t k = 0; k < e.size(); ++k)
                {
                    EXPECT_EQ(e[k].shift, (std::array<int, 3>{f[k].shift[2], f[k].shift[1], f[k].shift[0]}));
                    EXPECT_EQ(e[k].coefficient, f[k].coefficient);
                }
            }
            catch (const DegenerateDenominator&)
            {
            }
        }
    }
}

TEST(PlaceholdersProperty, IntermediateRelationsVanish)
{
    Rng rng(45);
    int done = 0;
    while (done < 3)
    {
        const auto base = random_point(rng);
        try
        {
            const auto field = consistent_placeholders(base, rng.engine());
            auto t = field.view();
            for (Gl4Intermediate rel : all_gl4_intermediates)
            {
                EXPECT_EQ(intermediate_residual(rel, base, t), 0) << intermediate_name(rel);
            }
            for (Gl4Rule rule : all_gl4_rules)
            {
                const auto e = expansion(rule, base);
                EXPECT_EQ(reconstruct(rule, base, t(e[0].shift), t(e[1].shift)), t({0, 0, 0})) << rule_name(rule);
            }
            ++done;
        }
        catch (const DegenerateDenominator&)
        {
        }
    }
}

TEST(Placeholders, ShiftWindowIsChecked)
{
    EXPECT_THROW(PlaceholderField::index({3, 0, 0}), PreconditionViolation);
    EXPECT_THROW(PlaceholderField::index({0, -1, 0}), PreconditionViolation);
    EXPECT_EQ(PlaceholderField::index({2, 2, 2}), PlaceholderField::size - 1);
}

TEST(Reconstruction, MatchesQuadrature)
{
    const auto a = SpectralParams::from_leading({complex(0.05, 0.2), complex(-0.08, -0.1), complex(0.02, 0.25)});
    const MellinPoint s({complex(1.5, 0.2), complex(1.3, -0.1), complex(1.7, 0.3)});
    const auto p = to_gl4_point(a, s);
    std::map<std::array<int, 3>, complex> cache;
    auto t = [&](const std::array<int, 3>& sh) {
        auto it = cache.find(sh);
        if (it == cache.end())
        {
            it = cache.emplace(sh, eval_t(a, s.shifted(sh)).value).first;
        }
        return it->second;
    };
    const complex base = t({0, 0, 0});
    for (Gl4Rule rule : all_gl4_rules)
    {
        const auto e = expansion(rule, p);
        EXPECT_REL(reconstruct(rule, p, t(e[0].shift), t(e[1].shift)), base, 1e-7) << rule_name(rule);
    }
    EXPECT_REL(reconstruct_s1a(p, t({1, 0, 0}), t({1, 0, 1})), base, 1e-7);
    EXPECT_REL(reconstruct_all(p, t({2, 1, 1}), t({1, 1, 1})), base, 1e-7);
    for (Gl4Intermediate rel : all_gl4_intermediates)
    {
        EXPECT_LT(std::abs(intermediate_residual(rel, p, t)), 1e-7 * std::abs(base)) << intermediate_name(rel);
    }
}

TEST(Gl4Point, DimensionChecked)
{
    EXPECT_THROW(to_gl4_point(SpectralParams::from_leading({0.1, 0.2}), MellinPoint({1.0, 1.0})),
                 PreconditionViolation);
}

} // namespace
} // namespace mellin
