// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "support.hpp"

namespace mellin
{
namespace
{

using sampling::Rng;
using Args = PDeltaArgs<rational>;

Args draw(Rng& rng, unsigned delta)
{
    return {delta, rng.ratio(), rng.ratio(), rng.ratio(), rng.ratio(), rng.ratio(), rng.ratio()};
}

// Straight transcription with hand-rolled rising factorials and binomials.
rational brute(const Args& x)
{
    auto rise = [](rational v, unsigned k) {
        rational acc(1);
        for (unsigned j = 0; j < k; ++j)
        {
            acc *= v + rational(j);
        }
        return acc;
    };
    rational fact_delta(1);
    for (unsigned j = 2; j <= x.delta; ++j)
    {
        fact_delta *= j;
    }
    rational sum(0);
    for (unsigned k = 0; k <= x.delta; ++k)
    {
        rational binom(1);
        for (unsigned j = 0; j < k; ++j)
        {
            binom = binom * rational(x.delta - j) / rational(j + 1);
        }
        const rational kk(k);
        const rational term = binom * rise(x.b, k) * rise(x.c, k) * rise(x.d, k) * rise(x.e + kk, x.delta - k) *
                              rise(x.f + kk, x.delta - k) * rise(x.g + kk, x.delta - k);
        sum += k % 2 == 0 ? term : rational(-term);
    }
    return sum / fact_delta;
}

TEST(PDelta, DepthZeroIsOne)
{
    EXPECT_EQ(p_delta<rational>(0, 2, 3, 5, 7, 11, 13), 1);
    EXPECT_EQ(p_delta<complex>(0, {0.3, 1.0}, 2.0, 3.0, 4.0, 5.0, 6.0), complex(1.0));
}

TEST(PDelta, DepthOneIsEfgMinusBcd)
{
    EXPECT_EQ(p_delta<rational>(1, 2, 3, 5, 7, 11, 13), 971);
    Rng rng(51);
    for (int i = 0; i < 50; ++i)
    {
        const auto x = draw(rng, 1);
        EXPECT_EQ(p_delta(x), x.e * x.f * x.g - x.b * x.c * x.d);
    }
}

TEST(PDeltaProperty, MatchesBruteForce)
{
    Rng rng(52);
    for (unsigned delta = 0; delta <= 7; ++delta)
    {
        for (int i = 0; i < 20; ++i)
        {
            const auto x = draw(rng, delta);
            EXPECT_EQ(p_delta(x), brute(x)) << "delta = " << delta;
        }
    }
}

TEST(PDeltaProperty, ComplexAgreesWithExact)
{
    Rng rng(53);
    for (unsigned delta = 0; delta <= 5; ++delta)
    {
        const auto x = draw(rng, delta);
        const complex got = p_delta<complex>(delta, x.b.convert_to<double>(), x.c.convert_to<double>(),
                                             x.d.convert_to<double>(), x.e.convert_to<double>(),
                                             x.f.convert_to<double>(), x.g.convert_to<double>());
        const double want = p_delta(x).convert_to<double>();
        EXPECT_LE(std::abs(got - want), 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST(PDeltaProperty, RecurrenceInDelta)
{
    Rng rng(54);
    for (unsigned delta = 0; delta <= 6; ++delta)
    {
        for (int i = 0; i < 100; ++i)
        {
            EXPECT_EQ(check_recur_a(draw(rng, delta)), 0) << "delta = " << delta;
        }
    }
}

TEST(PDeltaProperty, ThreeTermIdentityOnSurface)
{
    Rng rng(55);
    for (unsigned delta = 0; delta <= 6; ++delta)
    {
        for (int i = 0; i < 100; ++i)
        {
            const auto x = on_recur_b_surface(draw(rng, delta));
            EXPECT_EQ(recur_b_constraint(x), 0);
            EXPECT_EQ(check_recur_b(x), 0) << "delta = " << delta;
        }
    }
}

TEST(PDelta, ThreeTermIdentityOffSurfaceRaises)
{
    Args x{2, 1, 2, 3, 4, 5, 6};
    EXPECT_NE(recur_b_constraint(x), 0);
    EXPECT_THROW(check_recur_b(x), ConstraintViolation);
}

TEST(PDeltaProperty, Divisibility)
{
    Rng rng(56);
    for (unsigned delta = 0; delta <= 6; ++delta)
    {
        for (unsigned gamma_idx = 0; gamma_idx <= delta; ++gamma_idx)
        {
            for (int slot = 0; slot < 3; ++slot)
            {
                auto x = draw(rng, delta);
                const rational pin = -rational(gamma_idx);
                (slot == 0 ? x.b : slot == 1 ? x.c : x.d) = pin;
                EXPECT_TRUE(check_divisibility(x, gamma_idx));
            }
        }
    }
}

TEST(PDelta, DivisibilityPreconditions)
{
    Args x{2, rational(1, 2), 3, 4, 5, 6, 7};
    EXPECT_THROW(check_divisibility(x, 1), PreconditionViolation);
    x.b = -1;
    EXPECT_THROW(check_divisibility(x, 3), PreconditionViolation);
    EXPECT_TRUE(check_divisibility(x, 1));
}

TEST(PDelta, DepthCap)
{
    EXPECT_THROW(p_delta<rational>(pdelta_max + 1, 1, 1, 1, 1, 1, 1), PreconditionViolation);
}

TEST(PDeltaProperty, SymmetricWithinEachTriple)
{
    Rng rng(57);
    for (unsigned delta = 0; delta <= 5; ++delta)
    {
        const auto x = draw(rng, delta);
        const rational base = p_delta(x);
        std::array<rational, 3> top{x.b, x.c, x.d};
        std::array<rational, 3> bottom{x.e, x.f, x.g};
        std::array<int, 3> perm{0, 1, 2};
        do
        {
            const auto i = static_cast<std::size_t>(perm[0]);
            const auto j = static_cast<std::size_t>(perm[1]);
            const auto k = static_cast<std::size_t>(perm[2]);
            EXPECT_EQ(p_delta(delta, top[i], top[j], top[k], x.e, x.f, x.g), base);
            EXPECT_EQ(p_delta(delta, x.b, x.c, x.d, bottom[i], bottom[j], bottom[k]), base);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

// Degree at most delta in each single argument: the (delta+1)-th forward
// difference vanishes identically.
TEST(PDeltaProperty, DegreeInEachArgument)
{
    Rng rng(58);
    for (unsigned delta = 0; delta <= 5; ++delta)
    {
        const auto x = draw(rng, delta);
        for (int slot = 0; slot < 6; ++slot)
        {
            std::vector<rational> values;
            for (unsigned t = 0; t <= delta + 1; ++t)
            {
                auto y = x;
                rational* field[] = {&y.b, &y.c, &y.d, &y.e, &y.f, &y.g};
                *field[slot] += rational(t);
                values.push_back(p_delta(y));
            }
            for (unsigned order = 0; order <= delta; ++order)
            {
                for (std::size_t i = 0; i + 1 < values.size() - order; ++i)
                {
                    values[i] = values[i + 1] - values[i];
                }
            }
            EXPECT_EQ(values[0], 0) << "delta = " << delta << " slot = " << slot;
        }
    }
}

} // namespace
} // namespace mellin
