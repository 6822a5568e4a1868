// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_GL4_HPP_
#define MELLIN_GL4_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "recurrence.hpp"
#include "scalar.hpp"

namespace mellin
{

/// Genericity margin for the shift-relation hypotheses (s1 != -a_k etc.).
inline constexpr double hypothesis_margin = 1e-8;

template <Scalar S>
struct Gl4Point
{
    std::array<S, 4> a;
    std::array<S, 3> s;

    /// Builds a point, fixing a4 := -(a1 + a2 + a3).
    static Gl4Point make(const std::array<S, 3>& leading, const std::array<S, 3>& s)
    {
        return {{leading[0], leading[1], leading[2], -(leading[0] + leading[1] + leading[2])}, s};
    }

    [[nodiscard]] Gl4Point shifted(const std::array<int, 3>& by) const
    {
        Gl4Point out = *this;
        for (std::size_t i = 0; i < 3; ++i)
        {
            out.s[i] += S(by[i]);
        }
        return out;
    }
};

inline Gl4Point<complex> to_gl4_point(const SpectralParams& a, const MellinPoint& s)
{
    if (a.n() != 4)
    {
        throw PreconditionViolation("GL(4) point needs n = 4");
    }
    check_dimension(a, s);
    return {{a[0], a[1], a[2], a[3]}, {s[0], s[1], s[2]}};
}

inline SpectralParams spectral_of(const Gl4Point<complex>& p)
{
    return SpectralParams::from_full({p.a.begin(), p.a.end()});
}

inline MellinPoint mellin_of(const Gl4Point<complex>& p)
{
    return MellinPoint({p.s.begin(), p.s.end()});
}

/// (s1, s2, s3; a) -> (s3, s2, s1; -a). An involution fixing T_4.
template <Scalar S>
Gl4Point<S> reversal(const Gl4Point<S>& p)
{
    return {{-p.a[0], -p.a[1], -p.a[2], -p.a[3]}, {p.s[2], p.s[1], p.s[0]}};
}

/// B(p, q, r) = (p + q - r)(p + r).
template <Scalar S>
S poly_b(const S& p, const S& q, const S& r)
{
    return (p + q - r) * (p + r);
}

/// C_a(p, q) via 2q(p+a1)(p+q-a1) + (q+a2+a3)(q+a2+a4)(q+a3+a4).
template <Scalar S>
S poly_c(const std::array<S, 4>& a, const S& p, const S& q)
{
    return S(2) * q * (p + a[0]) * (p + q - a[0]) + (q + a[1] + a[2]) * (q + a[1] + a[3]) * (q + a[2] + a[3]);
}

/// First displayed form of C_a (uses a1, a2, a3 only).
template <Scalar S>
S poly_c_form1(const std::array<S, 4>& a, const S& p, const S& q)
{
    const S e2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
    return q * (p * p + (p + q) * (p + q)) - q * e2 + (a[0] + a[1]) * (a[0] + a[2]) * (a[1] + a[2]);
}

/// Second displayed form of C_a (power sums).
template <Scalar S>
S poly_c_form2(const std::array<S, 4>& a, const S& p, const S& q)
{
    S p2(0), p3(0);
    for (const auto& x : a)
    {
        p2 += x * x;
        p3 += x * x * x;
    }
    return q * (p * p + (p + q) * (p + q)) - q * p2 / S(2) - p3 / S(3);
}

template <Scalar S>
std::array<S, 4> negate(const std::array<S, 4>& a)
{
    return {-a[0], -a[1], -a[2], -a[3]};
}

/// One term c * T(s + shift).
template <Scalar S>
struct ShiftTerm
{
    std::array<int, 3> shift;
    S coefficient;
};

/// T(s) = sum of terms: a reconstruction of T from shifted values.
template <Scalar S>
using Expansion = std::vector<ShiftTerm<S>>;

/// sum of terms = 0.
template <Scalar S>
using Relation = std::vector<ShiftTerm<S>>;

/// Sum of c * T(s + shift) for a caller-supplied T over integer shifts.
template <Scalar S, typename TFunc>
S apply_terms(const std::vector<ShiftTerm<S>>& terms, TFunc&& t)
{
    S acc(0);
    for (const auto& term : terms)
    {
        acc += term.coefficient * t(term.shift);
    }
    return acc;
}

namespace detail
{

template <Scalar S>
void require_nonzero(const S& x, const char* what)
{
    if (negligible(x, hypothesis_margin))
    {
        throw DegenerateDenominator(std::string("shift-relation hypothesis fails: ") + what);
    }
}

template <Scalar S>
S prod_s1_plus_a(const Gl4Point<S>& p)
{
    S acc(1);
    for (const auto& ak : p.a)
    {
        const S f = p.s[0] + ak;
        require_nonzero(f, "s1 + a_k = 0");
        acc *= f;
    }
    return acc;
}

template <Scalar S>
S prod_s3_minus_a(const Gl4Point<S>& p)
{
    S acc(1);
    for (const auto& ak : p.a)
    {
        const S f = p.s[2] - ak;
        require_nonzero(f, "s3 - a_k = 0");
        acc *= f;
    }
    return acc;
}

template <Scalar S>
S prod_s2_plus_pairs(const Gl4Point<S>& p)
{
    S acc(1);
    for (std::size_t j = 0; j < 4; ++j)
    {
        for (std::size_t k = j + 1; k < 4; ++k)
        {
            const S f = p.s[1] + p.a[j] + p.a[k];
            require_nonzero(f, "s2 + a_j + a_k = 0");
            acc *= f;
        }
    }
    return acc;
}

template <Scalar S>
S nonzero_s2(const Gl4Point<S>& p)
{
    require_nonzero(p.s[1], "s2 = 0");
    return p.s[1];
}

} // namespace detail

/// s1-shifts (a): T = [B(s1,s2,s3) T(s+e1) + T(s+e1+e3)] / prod(s1+a_k).
template <Scalar S>
Expansion<S> expansion_s1a(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S den = detail::prod_s1_plus_a(p);
    return {{{1, 0, 0}, poly_b(s1, s2, s3) / den}, {{1, 0, 1}, S(1) / den}};
}

/// s1-shifts (b): needs s2 != 0 as well.
template <Scalar S>
Expansion<S> expansion_s1b(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S den = S(2) * detail::nonzero_s2(p) * detail::prod_s1_plus_a(p);
    return {{{1, 0, 0}, poly_c(p.a, s1, s2) / den}, {{1, 1, 0}, -(S(1) + s1 + s2 - s3) / den}};
}

/// s2-shifts.
template <Scalar S>
Expansion<S> expansion_s2(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S den = detail::prod_s2_plus_pairs(p);
    return {{{1, 1, 0}, S(2) * s2 * (S(1) + s1 + s2 - s3) / den},
            {{0, 1, 0}, (s2 + s3 - s1) * poly_c(p.a, s1, s2) / den}};
}

/// s3-shifts (a).
template <Scalar S>
Expansion<S> expansion_s3a(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S den = detail::prod_s3_minus_a(p);
    return {{{0, 0, 1}, poly_b(s3, s2, s1) / den}, {{1, 0, 1}, S(1) / den}};
}

/// s3-shifts (b): needs s2 != 0 as well.
template <Scalar S>
Expansion<S> expansion_s3b(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S den = S(2) * detail::nonzero_s2(p) * detail::prod_s3_minus_a(p);
    return {{{0, 0, 1}, poly_c(negate(p.a), s3, s2) / den}, {{0, 1, 1}, -(S(1) + s2 + s3 - s1) / den}};
}

/// s3-shifts (c).
template <Scalar S>
Expansion<S> expansion_s3c(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S den = detail::prod_s2_plus_pairs(p);
    return {{{0, 1, 1}, S(2) * s2 * (S(1) + s2 + s3 - s1) / den},
            {{0, 1, 0}, (s1 + s2 - s3) * poly_c(negate(p.a), s3, s2) / den}};
}

/// Strictly positive shifts in all variables: T from T(s+(2,1,1)), T(s+(1,1,1)).
template <Scalar S>
Expansion<S> expansion_all(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S p1 = detail::prod_s1_plus_a(p);
    const S p3 = detail::prod_s3_minus_a(p);
    const S den = p1 * p3 * detail::prod_s2_plus_pairs(p);
    const S c = poly_c(p.a, s1, s2);
    const S x = S(2) * s2 * p1 + poly_b(s3, s2, s1) * c;
    return {{{2, 1, 1}, x * (S(1) + s1 + s2 - s3) / den},
            {{1, 1, 1}, (x * poly_b(s1 + S(1), s2, s3) + c * p3) * (s2 + s3 - s1) / den}};
}

enum class Gl4Rule
{
    s1a,
    s1b,
    s2,
    s3a,
    s3b,
    s3c,
    all,
};

inline constexpr std::array<Gl4Rule, 7> all_gl4_rules = {Gl4Rule::s1a, Gl4Rule::s1b, Gl4Rule::s2, Gl4Rule::s3a,
                                                          Gl4Rule::s3b, Gl4Rule::s3c, Gl4Rule::all};

inline std::string_view rule_name(Gl4Rule r)
{
    switch (r)
    {
    case Gl4Rule::s1a: return "s1a";
    case Gl4Rule::s1b: return "s1b";
    case Gl4Rule::s2: return "s2";
    case Gl4Rule::s3a: return "s3a";
    case Gl4Rule::s3b: return "s3b";
    case Gl4Rule::s3c: return "s3c";
    case Gl4Rule::all: return "all";
    }
    return "?";
}

template <Scalar S>
Expansion<S> expansion(Gl4Rule r, const Gl4Point<S>& p)
{
    switch (r)
    {
    case Gl4Rule::s1a: return expansion_s1a(p);
    case Gl4Rule::s1b: return expansion_s1b(p);
    case Gl4Rule::s2: return expansion_s2(p);
    case Gl4Rule::s3a: return expansion_s3a(p);
    case Gl4Rule::s3b: return expansion_s3b(p);
    case Gl4Rule::s3c: return expansion_s3c(p);
    case Gl4Rule::all: return expansion_all(p);
    }
    throw PreconditionViolation("unknown GL(4) rule");
}

/// The reconstruct_* family: T(s) from T at the shifted points of the rule,
/// passed in the order the rule lists its shifts.
template <Scalar S>
S reconstruct(Gl4Rule r, const Gl4Point<S>& p, const S& first, const S& second)
{
    const auto terms = expansion(r, p);
    return terms[0].coefficient * first + terms[1].coefficient * second;
}

template <Scalar S>
S reconstruct_s1a(const Gl4Point<S>& p, const S& t_shift1, const S& t_shift13)
{
    return reconstruct(Gl4Rule::s1a, p, t_shift1, t_shift13);
}

template <Scalar S>
S reconstruct_s1b(const Gl4Point<S>& p, const S& t_shift1, const S& t_shift12)
{
    return reconstruct(Gl4Rule::s1b, p, t_shift1, t_shift12);
}

template <Scalar S>
S reconstruct_s2(const Gl4Point<S>& p, const S& t_shift12, const S& t_shift2)
{
    return reconstruct(Gl4Rule::s2, p, t_shift12, t_shift2);
}

template <Scalar S>
S reconstruct_s3a(const Gl4Point<S>& p, const S& t_shift3, const S& t_shift13)
{
    return reconstruct(Gl4Rule::s3a, p, t_shift3, t_shift13);
}

template <Scalar S>
S reconstruct_s3b(const Gl4Point<S>& p, const S& t_shift3, const S& t_shift23)
{
    return reconstruct(Gl4Rule::s3b, p, t_shift3, t_shift23);
}

template <Scalar S>
S reconstruct_s3c(const Gl4Point<S>& p, const S& t_shift23, const S& t_shift2)
{
    return reconstruct(Gl4Rule::s3c, p, t_shift23, t_shift2);
}

template <Scalar S>
S reconstruct_all(const Gl4Point<S>& p, const S& t_211_shift, const S& t_111_shift)
{
    return reconstruct(Gl4Rule::all, p, t_211_shift, t_111_shift);
}

/// Residual form of an expansion: T(s) - sum c T(s + shift).
template <Scalar S>
Relation<S> as_relation(const Expansion<S>& e)
{
    Relation<S> rel{{{0, 0, 0}, S(1)}};
    for (const auto& t : e)
    {
        rel.push_back({t.shift, -t.coefficient});
    }
    return rel;
}

/// The five-term GL(4) recurrence, coefficients as displayed.
template <Scalar S>
Relation<S> relation_five_term(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const S a1 = p.a[0];
    const S d0 = -s1 - a1;
    const S d1 = s1 - s2 - a1;
    const S d2 = s2 - s3 - a1;
    const S d3 = s3 - a1;
    for (const S* d : {&d0, &d1, &d2, &d3})
    {
        if (negligible(*d, denominator_tolerance))
        {
            throw DegenerateDenominator("GL(4) recurrence denominator vanishes");
        }
    }
    return {{{0, 0, 0}, S(1)},
            {{1, 0, 0}, S(1) / (d0 * d1)},
            {{0, 1, 0}, S(1) / (d1 * d2)},
            {{0, 0, 1}, S(1) / (d2 * d3)},
            {{1, 0, 1}, S(1) / (d0 * d1 * d2 * d3)}};
}

template <Scalar S>
Relation<S> relation_no_e2(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    const auto& a = p.a;
    const S l1 = (s1 + a[0]) * (s1 + a[1]);
    const S l3 = (s3 - a[0]) * (s3 - a[1]);
    detail::require_nonzero(l1, "s1 + a_k = 0");
    detail::require_nonzero(l3, "s3 - a_k = 0");
    return {{{0, 0, 0}, -s1 + s3 + a[0] + a[1]},
            {{1, 0, 0}, (s1 + s2 - s3) / l1},
            {{0, 0, 1}, (s1 - s2 - s3) / l3},
            {{1, 0, 1}, -(s1 - s3 + a[0] + a[1]) / (l1 * l3)}};
}

template <Scalar S>
Relation<S> relation_no_e1(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    return {{{0, 0, 0}, poly_c(p.a, -s3, s2)}, {{0, 1, 0}, -(s1 + s2 - s3)}, {{0, 0, 1}, -S(2) * s2}};
}

template <Scalar S>
Relation<S> relation_e1_e12(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    S prod(1);
    for (const auto& ak : p.a)
    {
        prod *= s1 + ak;
    }
    return {{{0, 0, 0}, S(2) * s2 * prod}, {{1, 0, 0}, -poly_c(p.a, s1, s2)}, {{1, 1, 0}, S(1) + s1 + s2 - s3}};
}

template <Scalar S>
Relation<S> relation_e1_e2(const Gl4Point<S>& p)
{
    const auto& [s1, s2, s3] = p.s;
    return {{{0, 0, 0}, poly_c(p.a, s1, -s2)}, {{1, 0, 0}, S(2) * s2}, {{0, 1, 0}, s2 + s3 - s1}};
}

/// Relations met on the way to the expansions above.
enum class Gl4Intermediate
{
    five_term, ///< the n = 4 case of the general recurrence
    no_e2,     ///< without T(s + e2)
    no_e1,     ///< without T(s + e1), T(s + e1 + e3)
    e1_e12,    ///< among T(s), T(s + e1), T(s + e1 + e2)
    e1_e2,     ///< among T(s), T(s + e1), T(s + e2)
};

inline constexpr std::array<Gl4Intermediate, 5> all_gl4_intermediates = {
    Gl4Intermediate::five_term, Gl4Intermediate::no_e2, Gl4Intermediate::no_e1, Gl4Intermediate::e1_e12,
    Gl4Intermediate::e1_e2};

inline std::string_view intermediate_name(Gl4Intermediate r)
{
    switch (r)
    {
    case Gl4Intermediate::five_term: return "five_term";
    case Gl4Intermediate::no_e2: return "no_e2";
    case Gl4Intermediate::no_e1: return "no_e1";
    case Gl4Intermediate::e1_e12: return "e1_e12";
    case Gl4Intermediate::e1_e2: return "e1_e2";
    }
    return "?";
}

template <Scalar S>
Relation<S> intermediate_relation(Gl4Intermediate r, const Gl4Point<S>& p)
{
    switch (r)
    {
    case Gl4Intermediate::five_term: return relation_five_term(p);
    case Gl4Intermediate::no_e2: return relation_no_e2(p);
    case Gl4Intermediate::no_e1: return relation_no_e1(p);
    case Gl4Intermediate::e1_e12: return relation_e1_e12(p);
    case Gl4Intermediate::e1_e2: return relation_e1_e2(p);
    }
    throw PreconditionViolation("unknown intermediate relation");
}

/// Residual of an intermediate relation given T at s + shift.
template <Scalar S, typename TFunc>
S intermediate_residual(Gl4Intermediate r, const Gl4Point<S>& p, TFunc&& t)
{
    return apply_terms(intermediate_relation(r, p), std::forward<TFunc>(t));
}

} // namespace mellin

#endif // MELLIN_GL4_HPP_
