// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_PDELTA_HPP_
#define MELLIN_PDELTA_HPP_

#include <string>

#include "errors.hpp"
#include "gamma.hpp"
#include "scalar.hpp"

namespace mellin
{

inline constexpr unsigned pdelta_max = 64;

template <Scalar S>
struct PDeltaArgs
{
    unsigned delta = 0;
    S b{0}, c{0}, d{0}, e{0}, f{0}, g{0};
};

namespace detail
{

template <Scalar S>
S factorial(unsigned k)
{
    S acc(1);
    for (unsigned j = 2; j <= k; ++j)
    {
        acc *= S(static_cast<double>(j));
    }
    return acc;
}

template <Scalar S>
void check_delta(unsigned delta)
{
    if (delta > pdelta_max)
    {
        throw PreconditionViolation("p_delta: delta exceeds the implementation cap of 64");
    }
}

} // namespace detail

/// p_delta(b,c,d; e,f,g) = sum_k (-1)^k (b)_k (c)_k (d)_k (e+k)_{delta-k}
///   (f+k)_{delta-k} (g+k)_{delta-k} / (k! (delta-k)!).
template <Scalar S>
S p_delta(const PDeltaArgs<S>& x)
{
    detail::check_delta<S>(x.delta);
    S acc(0);
    for (unsigned k = 0; k <= x.delta; ++k)
    {
        const unsigned rest = x.delta - k;
        const S kk(static_cast<double>(k));
        S term = pochhammer(x.b, k) * pochhammer(x.c, k) * pochhammer(x.d, k) * pochhammer(S(x.e + kk), rest) *
                 pochhammer(S(x.f + kk), rest) * pochhammer(S(x.g + kk), rest);
        term /= detail::factorial<S>(k) * detail::factorial<S>(rest);
        if (k % 2 == 1)
        {
            term = -term;
        }
        acc += term;
    }
    return acc;
}

template <Scalar S>
S p_delta(unsigned delta, const S& b, const S& c, const S& d, const S& e, const S& f, const S& g)
{
    return p_delta(PDeltaArgs<S>{delta, b, c, d, e, f, g});
}

/// Residual of
/// (e+delta)(f+delta)(g-1) p[b,c,d;e,f,g] - bcd p[b+1,c+1,d+1;e+1,f+1,g+1]
///   = (delta+1) p_{delta+1}[b,c,d;e,f,g-1].
template <Scalar S>
S check_recur_a(const PDeltaArgs<S>& x)
{
    const S one(1);
    const S dl(static_cast<double>(x.delta));
    const S lhs = (x.e + dl) * (x.f + dl) * (x.g - one) * p_delta(x) -
                  x.b * x.c * x.d *
                      p_delta(x.delta, S(x.b + one), S(x.c + one), S(x.d + one), S(x.e + one), S(x.f + one),
                              S(x.g + one));
    const S rhs = (dl + one) * p_delta(x.delta + 1, x.b, x.c, x.d, x.e, x.f, S(x.g - one));
    return lhs - rhs;
}

/// e + f + g + delta - b - c - d - 1, which the three-term identity needs to vanish.
template <Scalar S>
S recur_b_constraint(const PDeltaArgs<S>& x)
{
    return x.e + x.f + x.g + S(static_cast<double>(x.delta)) - x.b - x.c - x.d - S(1);
}

/// Returns x with g solved from the constraint e + f + g + delta - b - c - d = 1.
template <Scalar S>
PDeltaArgs<S> on_recur_b_surface(PDeltaArgs<S> x)
{
    x.g = S(1) + x.b + x.c + x.d - x.e - x.f - S(static_cast<double>(x.delta));
    return x;
}

/// Residual of the three-term identity valid on e + f + g + delta - b - c - d = 1:
/// b (f-c)(f-d)(c-e-(1+delta)) p[b+1,c,d; e,f+1,g]
/// + (g-b-1)((e-b+delta)(e-c)(f-1) - b(f-c)(1+delta)) p[b,c,d; e,f,g]
/// - (delta+1)(e-c) p_{delta+1}[b,c-1,d; e,f-1,g-1].
template <Scalar S>
S check_recur_b(const PDeltaArgs<S>& x, double tol = 1e-9)
{
    if (!negligible(recur_b_constraint(x), tol))
    {
        throw ConstraintViolation("three-term p_delta identity requires e + f + g + delta - b - c - d = 1");
    }
    const S one(1);
    const S dl(static_cast<double>(x.delta));
    const auto& [delta, b, c, d, e, f, g] = x;
    const S t1 = b * (f - c) * (f - d) * (c - e - (one + dl)) *
                 p_delta(delta, S(b + one), c, d, e, S(f + one), g);
    const S t2 = (g - b - one) * ((e - b + dl) * (e - c) * (f - one) - b * (f - c) * (one + dl)) * p_delta(x);
    const S rhs = (dl + one) * (e - c) * p_delta(delta + 1, b, S(c - one), d, e, S(f - one), S(g - one));
    return t1 + t2 - rhs;
}

/// The truncated sum left after factoring (e+gamma)_{delta-gamma}(f+gamma)_{delta-gamma}
/// (g+gamma)_{delta-gamma} out of p_delta when one of b, c, d equals -gamma.
template <Scalar S>
S pdelta_short_sum(const PDeltaArgs<S>& x, unsigned gamma)
{
    S acc(0);
    for (unsigned k = 0; k <= gamma; ++k)
    {
        const unsigned rest = gamma - k;
        const S kk(static_cast<double>(k));
        S term = pochhammer(x.b, k) * pochhammer(x.c, k) * pochhammer(x.d, k) * pochhammer(S(x.e + kk), rest) *
                 pochhammer(S(x.f + kk), rest) * pochhammer(S(x.g + kk), rest);
        term /= detail::factorial<S>(k) * detail::factorial<S>(x.delta - k);
        if (k % 2 == 1)
        {
            term = -term;
        }
        acc += term;
    }
    return acc;
}

/// Checks p_delta = (e+gamma)_{delta-gamma}(f+gamma)_{delta-gamma}(g+gamma)_{delta-gamma}
/// times the truncated sum, exactly. One of b, c, d must equal -gamma.
inline bool check_divisibility(const PDeltaArgs<rational>& x, unsigned gamma)
{
    if (gamma > x.delta)
    {
        throw PreconditionViolation("divisibility check needs gamma <= delta");
    }
    const rational pin = -rational(gamma);
    if (x.b != pin && x.c != pin && x.d != pin)
    {
        throw PreconditionViolation("divisibility check needs one of b, c, d equal to -gamma");
    }
    const unsigned len = x.delta - gamma;
    const rational g(gamma);
    const rational factor = pochhammer(rational(x.e + g), len) * pochhammer(rational(x.f + g), len) *
                            pochhammer(rational(x.g + g), len);
    return p_delta(x) == factor * pdelta_short_sum(x, gamma);
}

} // namespace mellin

#endif // MELLIN_PDELTA_HPP_
