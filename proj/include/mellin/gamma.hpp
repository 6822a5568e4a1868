// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_GAMMA_HPP_
#define MELLIN_GAMMA_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "errors.hpp"
#include "scalar.hpp"

namespace mellin
{

inline constexpr double pole_tolerance = 1e-12;

namespace detail
{

// Lanczos approximation, g = 607/128 with 15 terms (Godfrey's coefficients).
// Relative error below 1e-15 for Re z > 0.
inline constexpr double lanczos_shift = 671.0 / 128.0; // g + 1/2
inline constexpr std::array<double, 15> lanczos_coef = {
    0.999999999999997092,     57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,      -0.491913816097620199,   0.339946499848118887e-4,
    0.465236289270485756e-4,  -0.983744753048795646e-4, 0.158088703224912494e-3,
    -0.210264441724104883e-3, 0.217439618115212643e-3, -0.164318106536763890e-3,
    0.844182239838527433e-4,  -0.261908384015814087e-4, 0.368991826595316234e-5};

inline constexpr double log_sqrt_two_pi = 0.918938533204672741780329736406;

inline complex lanczos_log_gamma(complex z)
{
    complex series = lanczos_coef[0];
    for (std::size_t j = 1; j < lanczos_coef.size(); ++j)
    {
        series += lanczos_coef[j] / (z + static_cast<double>(j));
    }
    const complex t = z + lanczos_shift;
    return (z + 0.5) * std::log(t) - t + log_sqrt_two_pi + std::log(series) - std::log(z);
}

// log(sin(pi z)) without overflow for large |Im z|.
inline complex log_sin_pi(complex z)
{
    const double y = z.imag();
    if (std::abs(y) < 20.0)
    {
        return std::log(std::sin(pi * z));
    }
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; keep the dominant exponential.
    const complex i{0.0, 1.0};
    if (y > 0)
    {
        return -i * pi * z + std::log(complex(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * pi * z));
    }
    return i * pi * z + std::log(complex(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * pi * z));
}

inline bool near_nonpositive_integer(const complex& z, double tol)
{
    if (z.real() > tol)
    {
        return false;
    }
    const double nearest = std::round(z.real());
    return nearest <= 0.0 && std::abs(z - complex(nearest, 0.0)) <= tol;
}

[[noreturn]] inline void throw_pole(const complex& z)
{
    std::ostringstream msg;
    msg << "Gamma pole at z = (" << z.real() << ", " << z.imag() << ")";
    throw PoleError(msg.str());
}

} // namespace detail

/// log Gamma(z). For Re z >= 1/2 this is the principal branch; left of that
/// line it is continued with log Gamma(z) = log Gamma(z + N) - sum log(z + k),
/// which preserves the principal branch off the negative real axis. Far to
/// the left (N > 64) the reflection formula is used instead, and the imaginary
/// part is then only determined modulo 2 pi.
inline complex log_gamma(complex z)
{
    if (detail::near_nonpositive_integer(z, pole_tolerance))
    {
        detail::throw_pole(z);
    }
    if (z.real() >= 0.5)
    {
        return detail::lanczos_log_gamma(z);
    }
    const double shift = std::ceil(0.5 - z.real());
    if (shift <= 64.0)
    {
        const int n = static_cast<int>(shift);
        complex acc = detail::lanczos_log_gamma(z + static_cast<double>(n));
        for (int k = 0; k < n; ++k)
        {
            acc -= std::log(z + static_cast<double>(k));
        }
        return acc;
    }
    return std::log(pi) - detail::log_sin_pi(z) - detail::lanczos_log_gamma(1.0 - z);
}

inline complex gamma(complex z)
{
    return std::exp(log_gamma(z));
}

/// 1/Gamma(z); entire, so poles of Gamma map to exact zeros.
inline complex reciprocal_gamma(complex z)
{
    if (detail::near_nonpositive_integer(z, pole_tolerance))
    {
        return {0.0, 0.0};
    }
    return std::exp(-log_gamma(z));
}

/// Rising factorial (a)_kappa = a (a+1) ... (a+kappa-1), (a)_0 = 1.
template <Scalar S>
S pochhammer(const S& a, unsigned kappa)
{
    if constexpr (is_exact_v<S>)
    {
        S acc{1};
        for (unsigned j = 0; j < kappa; ++j)
        {
            acc *= a + S(j);
        }
        return acc;
    }
    else
    {
        if (kappa <= 64)
        {
            S acc{1.0};
            for (unsigned j = 0; j < kappa; ++j)
            {
                acc *= a + static_cast<double>(j);
            }
            return acc;
        }
        // A factor a + j vanishes exactly when a = -j for some j < kappa.
        if (detail::near_nonpositive_integer(a, pole_tolerance) && -std::round(a.real()) < kappa)
        {
            return {0.0, 0.0};
        }
        if (detail::near_nonpositive_integer(a, pole_tolerance))
        {
            // (-n)_kappa with n >= kappa: product of kappa negative integers.
            S acc{1.0};
            for (unsigned j = 0; j < kappa; ++j)
            {
                acc *= a + static_cast<double>(j);
            }
            return acc;
        }
        return std::exp(log_gamma(a + static_cast<double>(kappa)) - log_gamma(a));
    }
}

} // namespace mellin

#endif // MELLIN_GAMMA_HPP_
