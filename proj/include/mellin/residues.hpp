// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_RESIDUES_HPP_
#define MELLIN_RESIDUES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "params.hpp"
#include "pdelta.hpp"
#include "scalar.hpp"

namespace mellin
{

using Spectral4 = std::array<complex, 4>;

inline Spectral4 spectral4(const SpectralParams& a)
{
    if (a.n() != 4)
    {
        throw PreconditionViolation("residue formulas need n = 4");
    }
    return {a[0], a[1], a[2], a[3]};
}

/// min over j != k and |l| <= delta_max + 2 of |a_j - a_k - l|.
inline double genericity_gap(const Spectral4& a, unsigned delta_max)
{
    double gap = std::numeric_limits<double>::infinity();
    const int span = static_cast<int>(delta_max) + 2;
    for (std::size_t j = 0; j < 4; ++j)
    {
        for (std::size_t k = 0; k < 4; ++k)
        {
            if (j == k)
            {
                continue;
            }
            for (int l = -span; l <= span; ++l)
            {
                gap = std::min(gap, std::abs(a[j] - a[k] - static_cast<double>(l)));
            }
        }
    }
    return gap;
}

inline constexpr double genericity_threshold = 1e-6;

inline bool is_generic(const Spectral4& a, unsigned delta_max)
{
    return genericity_gap(a, delta_max) > genericity_threshold;
}

namespace detail
{

inline complex gamma_checked(complex z)
{
    if (near_nonpositive_integer(z, pole_tolerance))
    {
        std::ostringstream msg;
        msg << "residue formula hits a Gamma pole at (" << z.real() << ", " << z.imag() << ")";
        throw GammaPole(msg.str());
    }
    return gamma(z);
}

inline std::array<int, 3> complement_of(int m)
{
    std::array<int, 3> out{};
    std::size_t i = 0;
    for (int k = 1; k <= 4; ++k)
    {
        if (k != m)
        {
            out[i++] = k;
        }
    }
    return out;
}

inline void check_index(int m)
{
    if (m < 1 || m > 4)
    {
        throw PreconditionViolation("residue index must lie in {1,2,3,4}");
    }
}

inline double sign_of(unsigned k)
{
    return k % 2 == 0 ? 1.0 : -1.0;
}

inline double factorial_d(unsigned k)
{
    return factorial<complex>(k).real();
}

} // namespace detail

/// Residue of T_{4,a} in s1 at -a_m - delta1, as a function of (s2, s3).
/// Indices are 1-based.
inline complex residue_s1(const Spectral4& a, int m, unsigned delta1, complex s2, complex s3)
{
    detail::check_index(m);
    auto A = [&](int k) { return a[static_cast<std::size_t>(k - 1)]; };
    const complex am = A(m);
    const double d = delta1;
    complex value = reciprocal_gamma(s2 + s3 + am + d);
    for (int k : detail::complement_of(m))
    {
        value *= detail::gamma_checked(A(k) - am - d) * detail::gamma_checked(s3 - A(k)) *
                 detail::gamma_checked(s2 + A(k) + am);
    }
    const auto npq = detail::complement_of(m);
    return value * p_delta<complex>(delta1, s3 - A(npq[0]), s3 - A(npq[1]), s3 - A(npq[2]), s2 + s3 + am,
                                    1.0 + am - s2 + s3, s3 - am - d);
}

/// Residue of T_{4,a} in s2 at -a_m - a_n - delta2, as a function of (s1, s3).
/// {p, q} is the complement of {m, n} in increasing order.
inline complex residue_s2(const Spectral4& a, int m, int n, unsigned delta2, complex s1, complex s3)
{
    detail::check_index(m);
    detail::check_index(n);
    if (m == n)
    {
        throw PreconditionViolation("residue_s2 needs two distinct indices");
    }
    auto A = [&](int k) { return a[static_cast<std::size_t>(k - 1)]; };
    std::array<int, 2> pq{};
    std::size_t i = 0;
    for (int k = 1; k <= 4; ++k)
    {
        if (k != m && k != n)
        {
            pq[i++] = k;
        }
    }
    const double d = delta2;
    complex value = detail::gamma_checked(s1 + A(m)) * detail::gamma_checked(s1 + A(n));
    for (int k : pq)
    {
        value *= detail::gamma_checked(s3 - A(k)) * detail::gamma_checked(A(k) - A(m) - d) *
                 detail::gamma_checked(A(k) - A(n) - d);
    }
    const int p = pq[0];
    const int q = pq[1];
    return value * p_delta<complex>(delta2, s1 + A(m), A(p) - A(n) - d, s3 - A(q), 1.0 + A(m) - A(q),
                                    s1 + A(p) - d, s3 - A(n) - d);
}

/// Residue of T_{4,a} in s3 at a_m - delta3, as a function of (s1, s2).
inline complex residue_s3(const Spectral4& a, int m, unsigned delta3, complex s1, complex s2)
{
    detail::check_index(m);
    auto A = [&](int k) { return a[static_cast<std::size_t>(k - 1)]; };
    const complex am = A(m);
    const double d = delta3;
    complex value = reciprocal_gamma(s1 + s2 - am + d);
    for (int k : detail::complement_of(m))
    {
        value *= detail::gamma_checked(am - A(k) - d) * detail::gamma_checked(s1 + A(k)) *
                 detail::gamma_checked(s2 - A(k) - am);
    }
    const auto npq = detail::complement_of(m);
    return value * p_delta<complex>(delta3, s1 + A(npq[0]), s1 + A(npq[1]), s1 + A(npq[2]), s1 + s2 - am,
                                    1.0 - am - s2 + s1, s1 + am - d);
}

/// Residue in s1 at -a1 - delta1 of the s2-residue at -a1 - a4 - delta2.
inline complex residue_s1s2(const Spectral4& a, unsigned delta1, unsigned delta2, complex s3)
{
    const auto& [a1, a2, a3, a4] = a;
    const double d1 = delta1;
    const double d2 = delta2;
    complex value = detail::sign_of(delta1) / detail::factorial_d(delta1) * detail::gamma_checked(a4 - a1 - d1);
    for (const complex& ak : {a2, a3})
    {
        value *= detail::gamma_checked(s3 - ak) * detail::gamma_checked(ak - a1 - d2) *
                 detail::gamma_checked(ak - a4 - d2);
    }
    return value * p_delta<complex>(delta2, complex(-d1), a2 - a4 - d2, s3 - a3, 1.0 + a1 - a3, a2 - a1 - d1 - d2,
                                    s3 - a4 - d2);
}

/// Residue in s3 at a2 - delta3 of the s1-residue at -a1 - delta1.
inline complex residue_s1s3(const Spectral4& a, unsigned delta1, unsigned delta3, complex s2)
{
    const auto& [a1, a2, a3, a4] = a;
    const double d1 = delta1;
    const double d3 = delta3;
    complex value = detail::sign_of(delta3) / detail::factorial_d(delta3) * detail::gamma_checked(a2 - a1 - d1) *
                    detail::gamma_checked(s2 + a1 + a2) * reciprocal_gamma(s2 + a1 + a2 + d1 - d3);
    for (const complex& ak : {a3, a4})
    {
        value *= detail::gamma_checked(ak - a1 - d1) * detail::gamma_checked(a2 - ak - d3) *
                 detail::gamma_checked(s2 + a1 + ak);
    }
    return value * p_delta<complex>(delta1, complex(-d3), a2 - a3 - d3, a2 - a4 - d3, s2 + a1 + a2 - d3,
                                    1.0 + a1 + a2 - s2 - d3, a2 - a1 - d1 - d3);
}

/// Residue in s3 at a3 - delta3 of the s2-residue at -a1 - a4 - delta2.
inline complex residue_s2s3(const Spectral4& a, unsigned delta2, unsigned delta3, complex s1)
{
    const auto& [a1, a2, a3, a4] = a;
    const double d2 = delta2;
    const double d3 = delta3;
    complex value = detail::sign_of(delta3) / detail::factorial_d(delta3) * detail::gamma_checked(a3 - a2 - d3);
    for (const complex& aj : {a1, a4})
    {
        value *= detail::gamma_checked(s1 + aj) * detail::gamma_checked(a2 - aj - d2) *
                 detail::gamma_checked(a3 - aj - d2);
    }
    return value * p_delta<complex>(delta2, s1 + a1, a2 - a4 - d2, complex(-d3), 1.0 + a1 - a3, s1 + a2 - d2,
                                    a3 - a4 - d2 - d3);
}

/// Residue at s1 = -a1 - delta1, s2 = -a1 - a4 - delta2, s3 = a3 - delta3.
inline complex residue_s1s2s3(const Spectral4& a, unsigned delta1, unsigned delta2, unsigned delta3)
{
    const auto& [a1, a2, a3, a4] = a;
    const double d1 = delta1;
    const double d2 = delta2;
    const double d3 = delta3;
    complex value = detail::sign_of(delta1 + delta3) / (detail::factorial_d(delta1) * detail::factorial_d(delta3)) *
                    detail::gamma_checked(a4 - a1 - d1) * detail::gamma_checked(a3 - a2 - d3);
    for (const complex& ak : {a2, a3})
    {
        value *= detail::gamma_checked(ak - a1 - d2) * detail::gamma_checked(ak - a4 - d2);
    }
    return value * p_delta<complex>(delta2, complex(-d1), a2 - a4 - d2, complex(-d3), 1.0 + a1 - a3,
                                    a2 - a1 - d1 - d2, a3 - a4 - d2 - d3);
}

/// The three polynomial factors left after removing the Gamma prefactors of
/// the two-variable residues.
enum class ResiduePolynomial
{
    f, ///< from the (s1, s2) residue, in s3; degree <= 2 d1 + d2
    g, ///< from the (s1, s3) residue, in s2; degree <= 2 d1 + d3
    h, ///< from the (s2, s3) residue, in s1; degree <= d2 + 2 d3
};

inline std::string residue_polynomial_name(ResiduePolynomial w)
{
    switch (w)
    {
    case ResiduePolynomial::f: return "f";
    case ResiduePolynomial::g: return "g";
    case ResiduePolynomial::h: return "h";
    }
    return "?";
}

inline unsigned degree_bound(ResiduePolynomial w, unsigned first, unsigned second)
{
    switch (w)
    {
    case ResiduePolynomial::f:
    case ResiduePolynomial::g: return 2 * first + second;
    case ResiduePolynomial::h: return first + 2 * second;
    }
    return 0;
}

/// Value of f, g or h at (free variable x, a). `first`/`second` are the two
/// depths in the order (d1, d2), (d1, d3), (d2, d3).
inline complex residue_polynomial(ResiduePolynomial w, const Spectral4& a, unsigned first, unsigned second, complex x)
{
    const auto& [a1, a2, a3, a4] = a;
    const double u = first;
    const double v = second;
    complex value;
    complex prefactor;
    switch (w)
    {
    case ResiduePolynomial::f:
        value = residue_s1s2(a, first, second, x);
        prefactor = gamma(a4 - a1 - u);
        for (const complex& ak : {a2, a3})
        {
            prefactor *= gamma(x - ak) * gamma(ak - a1 - u) * gamma(ak - a4 - v);
        }
        break;
    case ResiduePolynomial::g:
        value = residue_s1s3(a, first, second, x);
        prefactor = gamma(a2 - a1 - u);
        for (const complex& ak : {a3, a4})
        {
            prefactor *= gamma(ak - a1 - u) * gamma(a2 - ak - v) * gamma(x + a1 + ak);
        }
        break;
    case ResiduePolynomial::h:
        value = residue_s2s3(a, first, second, x);
        prefactor = gamma(a3 - a2 - v);
        for (const complex& aj : {a1, a4})
        {
            prefactor *= gamma(x + aj) * gamma(a2 - aj - u) * gamma(a3 - aj - v);
        }
        break;
    }
    if (!(std::abs(prefactor) > 1e-300) || !std::isfinite(std::abs(prefactor)))
    {
        throw IllConditioned("Gamma prefactor of the residue polynomial is not usable at this point");
    }
    return value / prefactor;
}

/// A line t -> (x0 + t dx, a0 + t da), t in [-1, 1], along which the
/// polynomial factor is sampled. da must sum to zero.
struct DegreeLine
{
    complex x0;
    complex dx{1.0, 0.0};
    Spectral4 a0;
    Spectral4 da{};
};

struct DegreeCertificate
{
    int degree = 0;         ///< highest Chebyshev coefficient above the threshold
    unsigned bound = 0;     ///< the claimed maximum degree
    bool ok = false;        ///< degree <= bound
    std::vector<double> coefficient_magnitudes;
};

inline constexpr double degree_threshold = 1e-8;

/// Detects the degree of f, g or h along a line by Chebyshev interpolation
/// at bound + 6 nodes; coefficients beyond the true degree vanish to
/// roundoff for a polynomial and decay only geometrically otherwise.
inline DegreeCertificate certify_degree(ResiduePolynomial w, unsigned first, unsigned second, const DegreeLine& line)
{
    complex sum_da{0.0, 0.0};
    for (const auto& x : line.da)
    {
        sum_da += x;
    }
    if (std::abs(sum_da) > 1e-12)
    {
        throw PreconditionViolation("degree line must keep sum(a) = 0");
    }
    DegreeCertificate cert;
    cert.bound = degree_bound(w, first, second);
    const std::size_t nodes = cert.bound + 6;
    std::vector<complex> values(nodes);
    std::vector<double> ts(nodes);
    for (std::size_t j = 0; j < nodes; ++j)
    {
        ts[j] = std::cos(pi * (static_cast<double>(j) + 0.5) / static_cast<double>(nodes));
    }
    for (std::size_t j = 0; j + 1 < nodes; ++j)
    {
        if (std::abs(ts[j] - ts[j + 1]) < 1e-6)
        {
            throw IllConditioned("interpolation nodes too close");
        }
    }
    for (std::size_t j = 0; j < nodes; ++j)
    {
        Spectral4 a = line.a0;
        for (std::size_t k = 0; k < 4; ++k)
        {
            a[k] += ts[j] * line.da[k];
        }
        values[j] = residue_polynomial(w, a, first, second, line.x0 + ts[j] * line.dx);
    }
    // Discrete Chebyshev transform at the first-kind nodes.
    double largest = 0.0;
    cert.coefficient_magnitudes.resize(nodes);
    for (std::size_t k = 0; k < nodes; ++k)
    {
        complex c{0.0, 0.0};
        for (std::size_t j = 0; j < nodes; ++j)
        {
            c += values[j] *
                 std::cos(pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) / static_cast<double>(nodes));
        }
        c *= (k == 0 ? 1.0 : 2.0) / static_cast<double>(nodes);
        cert.coefficient_magnitudes[k] = std::abs(c);
        largest = std::max(largest, std::abs(c));
    }
    cert.degree = 0;
    for (std::size_t k = 0; k < nodes; ++k)
    {
        if (cert.coefficient_magnitudes[k] > degree_threshold * largest)
        {
            cert.degree = static_cast<int>(k);
        }
    }
    cert.ok = cert.degree <= static_cast<int>(cert.bound);
    return cert;
}

} // namespace mellin

#endif // MELLIN_RESIDUES_HPP_
