// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_RECURRENCE_HPP_
#define MELLIN_RECURRENCE_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace mellin
{

inline constexpr double denominator_tolerance = 1e-10;

/// A {0,1} string with no two adjacent ones.
class BinarySequence
{
public:
    BinarySequence() = default;
    explicit BinarySequence(std::vector<int> bits) : bits_(std::move(bits))
    {
        for (std::size_t i = 0; i < bits_.size(); ++i)
        {
            if (bits_[i] != 0 && bits_[i] != 1)
            {
                throw PreconditionViolation("binary sequence entries must be 0 or 1");
            }
            if (i + 1 < bits_.size() && bits_[i] == 1 && bits_[i + 1] == 1)
            {
                throw PreconditionViolation("binary sequence has two adjacent ones");
            }
        }
    }

    [[nodiscard]] const std::vector<int>& bits() const noexcept { return bits_; }
    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    int operator[](std::size_t i) const { return bits_[i]; }

    /// 1-based positions of the ones.
    [[nodiscard]] std::vector<int> ones() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < bits_.size(); ++i)
        {
            if (bits_[i] == 1)
            {
                out.push_back(static_cast<int>(i) + 1);
            }
        }
        return out;
    }

    bool operator==(const BinarySequence&) const = default;
    auto operator<=>(const BinarySequence&) const = default;

private:
    std::vector<int> bits_;
};

/// All length-m sequences without adjacent ones, in lexicographic order.
inline std::vector<BinarySequence> enumerate_no_adjacent(int m)
{
    if (m < 1)
    {
        throw PreconditionViolation("enumerate_no_adjacent requires m >= 1");
    }
    std::vector<BinarySequence> out;
    std::vector<int> bits(static_cast<std::size_t>(m), 0);
    // Depth-first, trying 0 before 1, yields lexicographic order.
    std::function<void(int)> walk = [&](int pos) {
        if (pos == m)
        {
            out.emplace_back(bits);
            return;
        }
        bits[pos] = 0;
        walk(pos + 1);
        if (pos == 0 || bits[pos - 1] == 0)
        {
            bits[pos] = 1;
            walk(pos + 1);
            bits[pos] = 0;
        }
    };
    walk(0);
    return out;
}

namespace detail
{

// s_k with the convention s_0 = s_n = 0; `s` holds s_1..s_{n-1}.
template <Scalar S>
S s_at(std::span<const S> s, int k)
{
    if (k <= 0 || k > static_cast<int>(s.size()))
    {
        return S(0);
    }
    return s[static_cast<std::size_t>(k - 1)];
}

// z_k with z_0 = 0 and z_{n-1} = -a1; `z` holds z_1..z_{n-2}.
template <Scalar S>
S z_at(std::span<const S> z, int k, int n, const S& a1)
{
    if (k == 0)
    {
        return S(0);
    }
    if (k == n - 1)
    {
        return -a1;
    }
    return z[static_cast<std::size_t>(k - 1)];
}

template <Scalar S>
void check_dimensions(int n, std::size_t s_len, std::size_t z_len)
{
    if (n < 2 || s_len != static_cast<std::size_t>(n - 1) || z_len != static_cast<std::size_t>(n - 2))
    {
        throw PreconditionViolation("recurrence: expected n >= 2, n-1 values of s and n-2 values of z");
    }
}

} // namespace detail

/// The pair of denominator factors (s_{k-1}-s_k-a1)(s_k-s_{k+1}-a1), each
/// checked separately against the degeneracy threshold.
template <Scalar S>
S shift_denominator(int k, const S& a1, std::span<const S> s)
{
    const S left = detail::s_at(s, k - 1) - detail::s_at(s, k) - a1;
    const S right = detail::s_at(s, k) - detail::s_at(s, k + 1) - a1;
    if (negligible(left, denominator_tolerance) || negligible(right, denominator_tolerance))
    {
        throw DegenerateDenominator("shift coefficient denominator vanishes at k = " + std::to_string(k));
    }
    return left * right;
}

/// alpha_k of the binary-sequence lemma, with z_0 = s_0 = s_n = 0 and
/// z_{n-1} = -a1.
template <Scalar S>
S alpha_coefficient(int k, int n, const S& a1, std::span<const S> s, std::span<const S> z)
{
    detail::check_dimensions<S>(n, s.size(), z.size());
    if (k < 1 || k > n - 1)
    {
        throw PreconditionViolation("alpha_coefficient: k out of range");
    }
    const S sk = detail::s_at(s, k);
    const S numerator = (detail::z_at(z, k - 1, n, a1) + sk + a1) * (detail::z_at(z, k, n, a1) + sk);
    return numerator / shift_denominator(k, a1, s);
}

template <Scalar S>
struct LemmaSum
{
    S sum;
    double max_term; ///< largest |prod alpha| over the index set
};

/// Sum over U_{n-1} of prod_{k in I_mu} alpha_k; identically zero.
template <Scalar S>
LemmaSum<S> lemma_sum(int n, const S& a1, std::span<const S> s, std::span<const S> z)
{
    detail::check_dimensions<S>(n, s.size(), z.size());
    std::vector<S> alpha;
    alpha.reserve(static_cast<std::size_t>(n - 1));
    for (int k = 1; k <= n - 1; ++k)
    {
        alpha.push_back(alpha_coefficient(k, n, a1, s, z));
    }
    LemmaSum<S> out{S(0), 0.0};
    for (const auto& mu : enumerate_no_adjacent(n - 1))
    {
        S term(1);
        for (int k : mu.ones())
        {
            term *= alpha[static_cast<std::size_t>(k - 1)];
        }
        out.max_term = std::max(out.max_term, magnitude(term));
        out.sum += term;
    }
    return out;
}

/// sum_mu c_mu(s) T(s + mu) = 0 for every s where the coefficients are defined.
template <Scalar S>
struct ShiftRelation
{
    struct Term
    {
        std::vector<int> shift;
        std::function<S(std::span<const S> s)> coefficient;
    };

    int n = 0;
    std::vector<Term> terms;

    /// Residual sum_mu c_mu(s) T(s + mu) for a caller-supplied T.
    template <typename TFunc>
    S residual(std::span<const S> s, TFunc&& t) const
    {
        S acc(0);
        for (const auto& term : terms)
        {
            std::vector<S> shifted(s.begin(), s.end());
            for (std::size_t j = 0; j < shifted.size(); ++j)
            {
                shifted[j] += S(term.shift[j]);
            }
            acc += term.coefficient(s) * t(std::span<const S>(shifted));
        }
        return acc;
    }
};

/// The general-n recurrence: sum over mu in U_{n-1} of
/// (prod_{k in I_mu} m_k) T_{n,a}(s + mu) = 0, with
/// m_k = 1/((s_{k-1}-s_k-a1)(s_k-s_{k+1}-a1)) and s_0 = s_n = 0.
template <Scalar S>
ShiftRelation<S> build_recurrence(int n, S a1)
{
    if (n < 2)
    {
        throw PreconditionViolation("build_recurrence requires n >= 2");
    }
    ShiftRelation<S> rel;
    rel.n = n;
    for (const auto& mu : enumerate_no_adjacent(n - 1))
    {
        std::vector<int> ones = mu.ones();
        rel.terms.push_back({mu.bits(), [n, a1, ones](std::span<const S> s) {
                                 if (s.size() != static_cast<std::size_t>(n - 1))
                                 {
                                     throw PreconditionViolation("recurrence coefficient: wrong length of s");
                                 }
                                 S c(1);
                                 for (int k : ones)
                                 {
                                     c /= shift_denominator(k, a1, s);
                                 }
                                 return c;
                             }});
    }
    return rel;
}

} // namespace mellin

#endif // MELLIN_RECURRENCE_HPP_
