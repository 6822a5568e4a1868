// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>

#include "support.hpp"

namespace mellin
{
namespace
{

using sampling::Rng;

std::vector<std::vector<int>> bits_of(const std::vector<BinarySequence>& seqs)
{
    std::vector<std::vector<int>> out;
    for (const auto& s : seqs)
    {
        out.push_back(s.bits());
    }
    return out;
}

TEST(EnumerateNoAdjacent, SmallCases)
{
    EXPECT_EQ(bits_of(enumerate_no_adjacent(1)), (std::vector<std::vector<int>>{{0}, {1}}));
    EXPECT_EQ(bits_of(enumerate_no_adjacent(2)), (std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}}));
}

TEST(EnumerateNoAdjacent, MatchesBruteForce)
{
    for (int m = 1; m <= 10; ++m)
    {
        std::vector<std::vector<int>> brute;
        for (int mask = 0; mask < (1 << m); ++mask)
        {
            std::vector<int> bits(static_cast<std::size_t>(m));
            bool ok = true;
            for (int i = 0; i < m; ++i)
            {
                bits[static_cast<std::size_t>(i)] = (mask >> (m - 1 - i)) & 1;
                if (i > 0 && bits[static_cast<std::size_t>(i)] && bits[static_cast<std::size_t>(i - 1)])
                {
                    ok = false;
                }
            }
            if (ok)
            {
                brute.push_back(bits);
            }
        }
        EXPECT_EQ(bits_of(enumerate_no_adjacent(m)), brute) << "m = " << m;
    }
    EXPECT_EQ(enumerate_no_adjacent(5).size(), 13u);
}

TEST(EnumerateNoAdjacent, FibonacciCounts)
{
    std::size_t prev2 = 2;
    std::size_t prev1 = 3;
    for (int m = 3; m <= 12; ++m)
    {
        const std::size_t count = enumerate_no_adjacent(m).size();
        EXPECT_EQ(count, prev1 + prev2);
        prev2 = prev1;
        prev1 = count;
    }
}

TEST(AlphaCoefficient, BaseCaseIsMinusOne)
{
    Rng rng(21);
    for (int i = 0; i < 20; ++i)
    {
        const complex a1 = rng.in_box(-1, 1, -1, 1);
        const std::vector<complex> s{rng.in_box(-2, 2, -2, 2)};
        const std::vector<complex> z;
        EXPECT_REL(alpha_coefficient<complex>(1, 2, a1, s, z), complex(-1.0), 1e-13);
    }
}

TEST(AlphaCoefficient, ZeroA1Substitution)
{
    Rng rng(22);
    const int n = 5;
    std::vector<complex> s(4);
    std::vector<complex> z(3);
    for (auto& v : s)
    {
        v = rng.in_box(-2, 2, -2, 2);
    }
    for (auto& v : z)
    {
        v = rng.in_box(-2, 2, -2, 2);
    }
    auto sk = [&](int k) { return k == 0 || k == n ? complex(0.0) : s[static_cast<std::size_t>(k - 1)]; };
    auto zk = [&](int k) { return k == 0 || k == n - 1 ? complex(0.0) : z[static_cast<std::size_t>(k - 1)]; };
    for (int k = 1; k < n; ++k)
    {
        const complex want = (zk(k - 1) + sk(k)) * (zk(k) + sk(k)) / ((sk(k - 1) - sk(k)) * (sk(k) - sk(k + 1)));
        EXPECT_REL(alpha_coefficient<complex>(k, n, complex(0.0), s, z), want, 1e-13);
    }
}

TEST(AlphaCoefficient, IndependentTranscriptionAtNFive)
{
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial)
    {
        const complex a1 = rng.in_box(-1, 1, -1, 1);
        complex S[6];
        complex Z[5];
        S[0] = S[5] = 0.0;
        Z[0] = 0.0;
        Z[4] = -a1;
        std::vector<complex> s;
        std::vector<complex> z;
        for (int k = 1; k <= 4; ++k)
        {
            S[k] = rng.in_box(-2, 2, -2, 2);
            s.push_back(S[k]);
        }
        for (int k = 1; k <= 3; ++k)
        {
            Z[k] = rng.in_box(-2, 2, -2, 2);
            z.push_back(Z[k]);
        }
        for (int k = 1; k <= 4; ++k)
        {
            const complex want =
                (Z[k - 1] + S[k] + a1) * (Z[k] + S[k]) / ((S[k - 1] - S[k] - a1) * (S[k] - S[k + 1] - a1));
            EXPECT_REL(alpha_coefficient<complex>(k, 5, a1, s, z), want, 1e-13);
        }
    }
}

TEST(AlphaCoefficient, DegenerateDenominatorRaises)
{
    const std::vector<complex> s{0.5, 0.5};
    const std::vector<complex> z{0.1};
    // s_1 - s_2 - a1 = 0 with a1 = 0.
    EXPECT_THROW(alpha_coefficient<complex>(1, 3, complex(0.0), s, z), DegenerateDenominator);
}

TEST(LemmaSum, BaseCase)
{
    const std::vector<rational> s{rational(3, 7)};
    const std::vector<rational> z;
    EXPECT_EQ(lemma_sum<rational>(2, rational(1, 5), s, z).sum, 0);
}

TEST(LemmaSumProperty, ExactOverRationals)
{
    Rng rng(24);
    for (int n = 2; n <= 8; ++n)
    {
        for (int i = 0; i < 100; ++i)
        {
            const rational a1 = rng.ratio();
            std::vector<rational> s;
            std::vector<rational> z;
            for (int k = 0; k < n - 1; ++k)
            {
                s.push_back(rng.ratio());
            }
            for (int k = 0; k < n - 2; ++k)
            {
                z.push_back(rng.ratio());
            }
            try
            {
                EXPECT_EQ(lemma_sum<rational>(n, a1, s, z).sum, 0) << "n = " << n;
            }
            catch (const DegenerateDenominator&)
            {
            }
        }
    }
}

TEST(LemmaSumProperty, FloatRelativeResidual)
{
    Rng rng(25);
    for (int n = 2; n <= 8; ++n)
    {
        for (int i = 0; i < 100; ++i)
        {
            const complex a1 = rng.in_box(-1, 1, -1, 1);
            std::vector<complex> s;
            std::vector<complex> z;
            for (int k = 0; k < n - 1; ++k)
            {
                s.push_back(rng.in_box(-2, 2, -2, 2));
            }
            for (int k = 0; k < n - 2; ++k)
            {
                z.push_back(rng.in_box(-2, 2, -2, 2));
            }
            const auto r = lemma_sum<complex>(n, a1, s, z);
            EXPECT_LT(std::abs(r.sum), 1e-10 * r.max_term);
        }
    }
}

// beta_k (inputs for n+1) = alpha_k (inputs for n) (1 + [k = n-1] beta_n):
// the step the induction rests on.
TEST(LemmaSumProperty, InductionStepCoefficients)
{
    Rng rng(26);
    for (int n = 2; n <= 7; ++n)
    {
        for (int i = 0; i < 30; ++i)
        {
            const rational a1 = rng.ratio();
            std::vector<rational> s;
            std::vector<rational> z;
            for (int k = 0; k < n; ++k)
            {
                s.push_back(rng.ratio());
            }
            for (int k = 0; k < n - 1; ++k)
            {
                z.push_back(rng.ratio());
            }
            const std::vector<rational> s_small(s.begin(), s.end() - 1);
            const std::vector<rational> z_small(z.begin(), z.end() - 1);
            try
            {
                const rational beta_n = alpha_coefficient<rational>(n, n + 1, a1, s, z);
                for (int k = 1; k <= n - 1; ++k)
                {
                    const rational beta_k = alpha_coefficient<rational>(k, n + 1, a1, s, z);
                    const rational alpha_k = alpha_coefficient<rational>(k, n, a1, s_small, z_small);
                    EXPECT_EQ(beta_k, alpha_k * (k == n - 1 ? rational(1) + beta_n : rational(1)));
                }
            }
            catch (const DegenerateDenominator&)
            {
            }
        }
    }
}

TEST(BuildRecurrence, TermCountsAreFibonacci)
{
    const std::vector<std::size_t> want{2, 3, 5, 8, 13, 21};
    for (int n = 2; n <= 7; ++n)
    {
        const auto rel = build_recurrence<complex>(n, complex(0.1));
        EXPECT_EQ(rel.terms.size(), want[static_cast<std::size_t>(n - 2)]);
        std::set<std::vector<int>> shifts;
        for (const auto& t : rel.terms)
        {
            shifts.insert(t.shift);
        }
        EXPECT_EQ(shifts.size(), rel.terms.size());
        const std::vector<complex> s(static_cast<std::size_t>(n - 1), complex(0.37, 0.2));
        EXPECT_EQ(rel.terms.front().coefficient(s), complex(1.0));
        EXPECT_TRUE(std::all_of(rel.terms.front().shift.begin(), rel.terms.front().shift.end(),
                                [](int v) { return v == 0; }));
    }
    EXPECT_THROW(build_recurrence<complex>(1, complex(0.0)), PreconditionViolation);
}

TEST(BuildRecurrence, GL2PrototypeExact)
{
    Rng rng(27);
    for (int i = 0; i < 100; ++i)
    {
        const rational a1 = rng.ratio();
        const rational s1 = rng.ratio();
        if (s1 == a1 || s1 == -a1)
        {
            continue;
        }
        const auto rel = build_recurrence<rational>(2, a1);
        const std::vector<rational> s{s1};
        // T(s+1) = (s+a)(s-a) T(s) with T(s) := 1.
        auto t = [&](std::span<const rational> p) {
            return p[0] == s1 ? rational(1) : rational((s1 + a1) * (s1 - a1));
        };
        EXPECT_EQ(rel.residual(std::span<const rational>(s), t), 0);
    }
}

TEST(BuildRecurrence, GL3ExactWithClosedFormRatios)
{
    Rng rng(28);
    for (int i = 0; i < 100; ++i)
    {
        const rational a1 = rng.ratio();
        const rational a2 = rng.ratio();
        const std::array<rational, 3> a{a1, a2, -(a1 + a2)};
        const std::vector<rational> s{rng.ratio(), rng.ratio()};
        auto t = [&](std::span<const rational> p) {
            const unsigned m1 = p[0] == s[0] ? 0u : 1u;
            const unsigned m2 = p[1] == s[1] ? 0u : 1u;
            rational v(1);
            for (const auto& ak : a)
            {
                v *= pochhammer(rational(s[0] + ak), m1) * pochhammer(rational(s[1] - ak), m2);
            }
            return rational(v / pochhammer(rational(s[0] + s[1]), m1 + m2));
        };
        try
        {
            EXPECT_EQ(build_recurrence<rational>(3, a1).residual(std::span<const rational>(s), t), 0);
        }
        catch (const DegenerateDenominator&)
        {
        }
    }
}

TEST(BuildRecurrence, FourMatchesFiveTermDisplay)
{
    Rng rng(29);
    for (int i = 0; i < 50; ++i)
    {
        const auto p = Gl4Point<complex>::make({rng.in_box(-1, 1, -1, 1), rng.in_box(-1, 1, -1, 1),
                                                rng.in_box(-1, 1, -1, 1)},
                                               {rng.in_box(-2, 2, -2, 2), rng.in_box(-2, 2, -2, 2),
                                                rng.in_box(-2, 2, -2, 2)});
        const auto rel = build_recurrence<complex>(4, p.a[0]);
        const auto five = relation_five_term(p);
        const std::vector<complex> s(p.s.begin(), p.s.end());
        ASSERT_EQ(rel.terms.size(), five.size());
        for (const auto& term : rel.terms)
        {
            const std::array<int, 3> sh{term.shift[0], term.shift[1], term.shift[2]};
            const auto it =
                std::find_if(five.begin(), five.end(), [&](const auto& f) { return f.shift == sh; });
            ASSERT_NE(it, five.end());
            EXPECT_REL(term.coefficient(s), it->coefficient, 1e-13);
        }
    }
}

} // namespace
} // namespace mellin
