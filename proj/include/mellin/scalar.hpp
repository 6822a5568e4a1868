// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_SCALAR_HPP_
#define MELLIN_SCALAR_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include "errors.hpp"

namespace mellin
{

using complex = std::complex<double>;

/// Exact twin used to verify the polynomial and rational-function identities.
using rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

template <typename S>
concept Scalar = std::same_as<S, complex> || std::same_as<S, rational>;

template <typename S>
inline constexpr bool is_exact_v = std::same_as<S, rational>;

/// True when `x` must be treated as zero in a denominator: exactly zero for
/// rationals, |x| <= tol for floating values.
inline bool negligible(const complex& x, double tol) { return std::abs(x) <= tol; }
inline bool negligible(const rational& x, double /*tol*/) { return x == 0; }

inline double magnitude(const complex& x) { return std::abs(x); }
inline double magnitude(const rational& x) { return std::abs(x.convert_to<double>()); }

inline complex to_complex(const complex& x) { return x; }
inline complex to_complex(const rational& x) { return complex(x.convert_to<double>(), 0.0); }

/// Divides by `den`, raising DegenerateDenominator when it is negligible.
template <Scalar S>
S checked_div(const S& num, const S& den, double tol, const char* what)
{
    if (negligible(den, tol))
    {
        throw DegenerateDenominator(std::string("vanishing denominator in ") + what);
    }
    return num / den;
}

/// Rejects NaN/inf: ComplexValue never stores them.
inline const complex& finite_or_throw(const complex& z, const char* what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    {
        throw NonConvergence(std::string("non-finite value produced by ") + what);
    }
    return z;
}

} // namespace mellin

#endif // MELLIN_SCALAR_HPP_
