// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_ENGINE_HPP_
#define MELLIN_ENGINE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "scalar.hpp"

namespace mellin
{

/// T_{2,a}(s) = Gamma(s1 + a1) Gamma(s1 - a1).
inline complex t2(const SpectralParams& a, const MellinPoint& s)
{
    if (a.n() != 2)
    {
        throw PreconditionViolation("t2 expects n = 2");
    }
    check_dimension(a, s);
    return gamma(s[0] + a[0]) * gamma(s[0] - a[0]);
}

/// Closed form of T_{3,a}(s1, s2):
/// prod_k Gamma(s1 + a_k) Gamma(s2 - a_k) / Gamma(s1 + s2).
inline complex t3_barnes(const SpectralParams& a, const MellinPoint& s)
{
    if (a.n() != 3)
    {
        throw PreconditionViolation("t3_barnes expects n = 3");
    }
    check_dimension(a, s);
    complex log_num{0.0, 0.0};
    for (int k = 0; k < 3; ++k)
    {
        log_num += log_gamma(s[0] + a[k]) + log_gamma(s[1] - a[k]);
    }
    return std::exp(log_num) * reciprocal_gamma(s[0] + s[1]);
}

namespace detail
{

// log T_{2,b}(w).
inline complex log_t2(const SpectralParams& b, complex w)
{
    return log_gamma(w + b[0]) + log_gamma(w - b[0]);
}

// log T_{3,b}(w1, w2) from the closed form; nullopt where 1/Gamma(w1+w2) = 0.
inline std::optional<complex> log_t3(const SpectralParams& b, complex w1, complex w2)
{
    auto rg = log_reciprocal_gamma(w1 + w2);
    if (!rg)
    {
        return std::nullopt;
    }
    complex acc = *rg;
    for (int k = 0; k < 3; ++k)
    {
        acc += log_gamma(w1 + b[k]) + log_gamma(w2 - b[k]);
    }
    return acc;
}

struct Interval
{
    double lo;
    double hi;
    [[nodiscard]] bool feasible() const { return lo < hi; }
    [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
    [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
};

} // namespace detail

/// Real parts of the contours used for one evaluation.
struct ContourPlacement
{
    std::vector<double> outer; ///< Re z_1..Re z_{n-2}
    std::optional<double> inner; ///< Re u of the inner GL(3) line (recursive path only)
};

namespace detail
{

inline std::vector<Interval> outer_intervals(const SpectralParams& a, const MellinPoint& s, InnerTransform inner,
                                             double m)
{
    std::vector<Interval> out;
    const double a1 = a[0].real();
    if (a.n() == 3)
    {
        const double lo = std::max(-s[0].real(), -(s[1] + a[0]).real()) + m;
        const double hi = std::min(a[1].real(), a[2].real()) - m;
        out.push_back({lo, hi});
        return out;
    }
    // n == 4. Both poles families of the outer factors sit to the left; the
    // inner transform's argument must lie in its own convergence region.
    const double lo1 = std::max(-s[0].real(), -(s[1] + a[0]).real()) + m;
    const double lo2 = std::max(-s[1].real(), -(s[2] + a[0]).real()) + m;
    double hi1 = std::numeric_limits<double>::infinity();
    double hi2 = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 4; ++k)
    {
        // The recursive path needs room for the inner u-line between z and b,
        // so every constraint except the one that does not involve u doubles.
        const double extra = (inner == InnerTransform::recursive && k > 1) ? m : 0.0;
        hi1 = std::min(hi1, a[k].real() - m - extra);
        hi2 = std::min(hi2, -(a1 + a[k].real()) - m - extra);
    }
    out.push_back({lo1, hi1});
    out.push_back({lo2, hi2});
    return out;
}

inline Interval inner_interval(const SpectralParams& a, double c1, double c2, double m)
{
    const SpectralParams b = a.shifted();
    const double a1 = a[0].real();
    const double lo = std::max(c1 + a1 / 3.0, c2 + 2.0 * a1 / 3.0 - b[0].real()) + m;
    const double hi = std::min(b[1].real(), b[2].real()) - m;
    return {lo, hi};
}

} // namespace detail

/// Contour real parts for (a, s), honouring any explicit cfg.contour_re.
/// Nothing when no admissible placement exists.
inline std::optional<ContourPlacement> place_contours(const SpectralParams& a, const MellinPoint& s,
                                                      const QuadratureConfig& cfg, double margin = contour_margin)
{
    check_dimension(a, s);
    if (a.n() < 3 || a.n() > 4)
    {
        return ContourPlacement{};
    }
    const auto intervals = detail::outer_intervals(a, s, cfg.inner, margin);
    ContourPlacement p;
    for (std::size_t j = 0; j < intervals.size(); ++j)
    {
        if (!intervals[j].feasible())
        {
            return std::nullopt;
        }
        if (j < cfg.contour_re.size())
        {
            if (!intervals[j].contains(cfg.contour_re[j]))
            {
                return std::nullopt;
            }
            p.outer.push_back(cfg.contour_re[j]);
        }
        else
        {
            p.outer.push_back(intervals[j].mid());
        }
    }
    if (a.n() == 4 && cfg.inner == InnerTransform::recursive)
    {
        const auto iv = detail::inner_interval(a, p.outer[0], p.outer[1], margin);
        if (!iv.feasible())
        {
            return std::nullopt;
        }
        if (cfg.contour_re.size() > 2)
        {
            if (!iv.contains(cfg.contour_re[2]))
            {
                return std::nullopt;
            }
            p.inner = cfg.contour_re[2];
        }
        else
        {
            p.inner = iv.mid();
        }
    }
    return p;
}

/// True when eval_t can integrate at (a, s) without reordering a.
inline bool in_convergence_region(const SpectralParams& a, const MellinPoint& s,
                                  InnerTransform inner = InnerTransform::barnes)
{
    QuadratureConfig cfg;
    cfg.inner = inner;
    return place_contours(a, s, cfg).has_value();
}

struct Evaluation
{
    complex value;
    double est_rel_error = 0.0;
    double step = 0.0;
    int refinements = 0;
    ContourPlacement contours;
    std::vector<int> order; ///< permutation of a actually integrated (T is symmetric in a)
};

namespace detail
{

inline RuleResult integrate_gl3(const SpectralParams& a, const MellinPoint& s, double c, const QuadratureConfig& cfg)
{
    const SpectralParams b = a.shifted();
    const complex a1 = a[0];
    return refine_until_converged(cfg, [&](double h) {
        const int half = half_node_count(cfg.height, h);
        auto sums = trapezoid_line(half, [&](int j) -> std::optional<complex> {
            const complex z(c, h * j);
            return log_gamma(z + s[0]) + log_gamma(z + s[1] + a1) + log_t2(b, -z - a1 / 2.0);
        });
        sums.scale(h / (2.0 * pi));
        return std::pair{sums, static_cast<std::size_t>(2 * half + 1)};
    });
}

// One row of a grid sum: the caller supplies log terms for k in [-half, half].
struct RowAccumulator
{
    TrapezoidSums sums;
    void add(int j, int k, double weight_coarse, const complex& log_term, double cutoff_level)
    {
        if (log_term.real() < cutoff_level)
        {
            return;
        }
        const complex term = std::exp(log_term);
        sums.fine += term;
        sums.abs_sum += std::abs(term);
        if (j % 2 == 0 && k % 2 == 0)
        {
            sums.coarse += weight_coarse * term;
        }
    }
};

inline double max_real(const std::vector<std::optional<complex>>& v)
{
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& x : v)
    {
        if (x)
        {
            m = std::max(m, x->real());
        }
    }
    return m;
}

inline double max_real(const std::vector<complex>& v)
{
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& x : v)
    {
        m = std::max(m, x.real());
    }
    return m;
}

// GL(4) with the closed-form GL(3) transform inside: a 2-fold sum whose log
// terms split as A[j] + B[k] + C[j + k].
inline RuleResult integrate_gl4_barnes(const SpectralParams& a, const MellinPoint& s, double c1, double c2,
                                       const QuadratureConfig& cfg)
{
    const SpectralParams b = a.shifted();
    const complex a1 = a[0];
    const unsigned workers = cfg.worker_count();
    return refine_until_converged(cfg, [&](double h) {
        const int half = half_node_count(cfg.height, h);
        const std::size_t width = static_cast<std::size_t>(2 * half + 1);
        std::vector<complex> A(width), B(width);
        std::vector<std::optional<complex>> C(2 * width - 1);
        for (int j = -half; j <= half; ++j)
        {
            const complex z1(c1, h * j);
            const complex z2(c2, h * j);
            const complex w1 = -z1 - a1 / 3.0;
            const complex w2 = -z2 - 2.0 * a1 / 3.0;
            complex la = log_gamma(z1 + s[0]) + log_gamma(z1 + s[1] + a1);
            complex lb = log_gamma(z2 + s[1]) + log_gamma(z2 + s[2] + a1);
            for (int k = 0; k < 3; ++k)
            {
                la += log_gamma(w1 + b[k]);
                lb += log_gamma(w2 - b[k]);
            }
            A[static_cast<std::size_t>(j + half)] = la;
            B[static_cast<std::size_t>(j + half)] = lb;
        }
        for (int m = -2 * half; m <= 2 * half; ++m)
        {
            C[static_cast<std::size_t>(m + 2 * half)] = log_reciprocal_gamma(complex(-c1 - c2, -h * m) - a1);
        }
        auto log_at = [&](int j, int k) -> std::optional<complex> {
            const auto& c = C[static_cast<std::size_t>(j + k + 2 * half)];
            if (!c)
            {
                return std::nullopt;
            }
            return A[static_cast<std::size_t>(j + half)] + B[static_cast<std::size_t>(k + half)] + *c;
        };
        const double maxB = max_real(B);
        const double maxC = max_real(C);
        // A lower bound for the largest term lets whole rows be skipped safely.
        double floor_level = -std::numeric_limits<double>::infinity();
        for (int j = -half; j <= half; ++j)
        {
            if (auto l = log_at(j, 0))
            {
                floor_level = std::max(floor_level, l->real());
            }
        }
        floor_level -= log_cutoff;

        std::vector<double> row_max(width, -std::numeric_limits<double>::infinity());
        parallel_for(width, workers, [&](std::size_t r) {
            const int j = static_cast<int>(r) - half;
            const double ra = A[r].real();
            if (ra + maxB + maxC < floor_level)
            {
                return;
            }
            double mx = row_max[r];
            for (int k = -half; k <= half; ++k)
            {
                if (ra + B[static_cast<std::size_t>(k + half)].real() + maxC < floor_level)
                {
                    continue;
                }
                if (auto l = log_at(j, k))
                {
                    mx = std::max(mx, l->real());
                }
            }
            row_max[r] = mx;
        });
        const double cutoff_level = *std::max_element(row_max.begin(), row_max.end()) - log_cutoff;

        std::vector<TrapezoidSums> rows(width);
        parallel_for(width, workers, [&](std::size_t r) {
            const int j = static_cast<int>(r) - half;
            const double ra = A[r].real();
            RowAccumulator acc;
            const bool edge_row = std::abs(j) == half;
            if (ra + maxB + maxC < cutoff_level)
            {
                if (edge_row)
                {
                    acc.sums.edge_log = ra + maxB + maxC;
                }
                rows[r] = acc.sums;
                return;
            }
            for (int k = -half; k <= half; ++k)
            {
                const double bound = ra + B[static_cast<std::size_t>(k + half)].real() + maxC;
                const bool edge = edge_row || std::abs(k) == half;
                if (bound < cutoff_level)
                {
                    if (edge)
                    {
                        acc.sums.edge_log = std::max(acc.sums.edge_log, bound);
                    }
                    continue;
                }
                auto l = log_at(j, k);
                if (!l)
                {
                    continue;
                }
                if (edge)
                {
                    acc.sums.edge_log = std::max(acc.sums.edge_log, l->real());
                }
                acc.add(j, k, 4.0, *l, cutoff_level);
            }
            rows[r] = acc.sums;
        });
        TrapezoidSums total;
        for (const auto& row : rows)
        {
            total += row;
        }
        const double scale = h / (2.0 * pi);
        total.scale(scale * scale);
        return std::pair{total, width * width};
    });
}

// GL(4) with the GL(3) transform itself computed by its contour integral:
// a 3-fold sum over (z1, z2, u) with log terms
// O1[j] + O2[k] + U1[l - j] + U2[l - k] + W[l].
inline RuleResult integrate_gl4_recursive(const SpectralParams& a, const MellinPoint& s, double c1, double c2,
                                          double cu, const QuadratureConfig& cfg)
{
    const SpectralParams b = a.shifted();
    const complex a1 = a[0];
    const unsigned workers = cfg.worker_count();
    return refine_until_converged(cfg, [&](double h) {
        const int half = half_node_count(cfg.height, h);
        const std::size_t width = static_cast<std::size_t>(2 * half + 1);
        std::vector<complex> O1(width), O2(width), W(width), U1(2 * width - 1), U2(2 * width - 1);
        for (int j = -half; j <= half; ++j)
        {
            const std::size_t r = static_cast<std::size_t>(j + half);
            const complex z1(c1, h * j);
            const complex z2(c2, h * j);
            const complex u(cu, h * j);
            const complex w1 = -z1 - a1 / 3.0;
            const complex w2 = -z2 - 2.0 * a1 / 3.0;
            // Outer factors times the GL(3) prefactor Gamma(w1 + b1) Gamma(w2 - b1).
            O1[r] = log_gamma(z1 + s[0]) + log_gamma(z1 + s[1] + a1) + log_gamma(w1 + b[0]);
            O2[r] = log_gamma(z2 + s[1]) + log_gamma(z2 + s[2] + a1) + log_gamma(w2 - b[0]);
            // T_{2,c}(-u - b1/2) with c = shifted(b).
            W[r] = log_t2(b.shifted(), -u - b[0] / 2.0);
        }
        for (int d = -2 * half; d <= 2 * half; ++d)
        {
            const std::size_t r = static_cast<std::size_t>(d + 2 * half);
            U1[r] = log_gamma(complex(cu - c1, h * d) - a1 / 3.0);
            U2[r] = log_gamma(complex(cu - c2, h * d) - 2.0 * a1 / 3.0 + b[0]);
        }
        auto log_at = [&](int j, int k, int l) {
            return O1[static_cast<std::size_t>(j + half)] + O2[static_cast<std::size_t>(k + half)] +
                   U1[static_cast<std::size_t>(l - j + 2 * half)] + U2[static_cast<std::size_t>(l - k + 2 * half)] +
                   W[static_cast<std::size_t>(l + half)];
        };
        const double maxU = max_real(U1) + max_real(U2) + max_real(W);
        const double maxO2 = max_real(O2);
        double floor_level = log_at(0, 0, 0).real();
        for (int l = -half; l <= half; ++l)
        {
            floor_level = std::max(floor_level, log_at(0, 0, l).real());
        }
        floor_level -= log_cutoff;

        auto scan = [&](double level, bool accumulate, std::size_t r, double& mx, TrapezoidSums& out) {
            const int j = static_cast<int>(r) - half;
            const double r1 = O1[r].real();
            if (r1 + maxO2 + maxU < level)
            {
                if (std::abs(j) == half)
                {
                    out.edge_log = std::max(out.edge_log, r1 + maxO2 + maxU);
                }
                return;
            }
            for (int k = -half; k <= half; ++k)
            {
                const double r12 = r1 + O2[static_cast<std::size_t>(k + half)].real();
                const bool edge_jk = std::abs(j) == half || std::abs(k) == half;
                if (r12 + maxU < level)
                {
                    if (edge_jk)
                    {
                        out.edge_log = std::max(out.edge_log, r12 + maxU);
                    }
                    continue;
                }
                for (int l = -half; l <= half; ++l)
                {
                    const complex lt = log_at(j, k, l);
                    mx = std::max(mx, lt.real());
                    if (!accumulate)
                    {
                        continue;
                    }
                    if (edge_jk || std::abs(l) == half)
                    {
                        out.edge_log = std::max(out.edge_log, lt.real());
                    }
                    if (lt.real() < level)
                    {
                        continue;
                    }
                    const complex term = std::exp(lt);
                    out.fine += term;
                    out.abs_sum += std::abs(term);
                    if (j % 2 == 0 && k % 2 == 0 && l % 2 == 0)
                    {
                        out.coarse += 8.0 * term;
                    }
                }
            }
        };
        std::vector<double> row_max(width, -std::numeric_limits<double>::infinity());
        parallel_for(width, workers, [&](std::size_t r) {
            TrapezoidSums unused;
            scan(floor_level, false, r, row_max[r], unused);
        });
        const double cutoff_level = *std::max_element(row_max.begin(), row_max.end()) - log_cutoff;
        std::vector<TrapezoidSums> rows(width);
        parallel_for(width, workers, [&](std::size_t r) {
            double unused = 0.0;
            scan(cutoff_level, true, r, unused, rows[r]);
        });
        TrapezoidSums total;
        for (const auto& row : rows)
        {
            total += row;
        }
        const double scale = h / (2.0 * pi);
        total.scale(scale * scale * scale);
        return std::pair{total, width * width * width};
    });
}

inline Evaluation evaluate_ordered(const SpectralParams& a, const MellinPoint& s, const QuadratureConfig& cfg,
                                   const ContourPlacement& p)
{
    Evaluation ev;
    ev.contours = p;
    const complex prefactor = gamma(s[0] + a[0]) * gamma(s[s.size() - 1] - a[0]);
    RuleResult rr;
    if (a.n() == 3)
    {
        rr = integrate_gl3(a, s, p.outer[0], cfg);
    }
    else if (cfg.inner == InnerTransform::barnes)
    {
        rr = integrate_gl4_barnes(a, s, p.outer[0], p.outer[1], cfg);
    }
    else
    {
        rr = integrate_gl4_recursive(a, s, p.outer[0], p.outer[1], *p.inner, cfg);
    }
    ev.value = finite_or_throw(prefactor * rr.value, "eval_t");
    ev.est_rel_error = rr.est_rel_error;
    ev.step = rr.step;
    ev.refinements = rr.refinements;
    return ev;
}

} // namespace detail

/// T_{n,a}(s) for n = 2, 3, 4 by the recursive Mellin-Barnes integral.
/// If the given order of a admits no contour, other orders are tried, since
/// T is symmetric in a; explicit cfg.contour_re disables reordering.
inline Evaluation eval_t(const SpectralParams& a, const MellinPoint& s, const QuadratureConfig& cfg = {})
{
    cfg.validate();
    check_dimension(a, s);
    if (a.n() < 2 || a.n() > 4)
    {
        throw PreconditionViolation("eval_t supports n = 2, 3, 4");
    }
    std::vector<int> order(static_cast<std::size_t>(a.n()));
    std::iota(order.begin(), order.end(), 0);
    if (a.n() == 2)
    {
        Evaluation ev;
        ev.value = finite_or_throw(t2(a, s), "t2");
        ev.order = order;
        return ev;
    }
    do
    {
        const SpectralParams ap = a.permuted(order);
        if (auto p = place_contours(ap, s, cfg))
        {
            Evaluation ev = detail::evaluate_ordered(ap, s, cfg, *p);
            ev.order = order;
            return ev;
        }
        if (!cfg.contour_re.empty())
        {
            break;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    std::ostringstream msg;
    msg << "no admissible contour for n = " << a.n() << " at this (a, s)";
    throw ContourError(msg.str());
}

/// K_nu(y) = (1/4)(1/2 pi i) int Gamma((s+nu)/2) Gamma((s-nu)/2) (y/2)^{-s} ds.
inline RuleResult bessel_k_mb(complex nu, double y, const QuadratureConfig& cfg = {})
{
    cfg.validate();
    if (!(y > 0.0))
    {
        throw PreconditionViolation("bessel_k_mb requires y > 0");
    }
    const double rightmost_pole = std::abs(nu.real());
    double c = rightmost_pole + 1.0;
    if (!cfg.contour_re.empty())
    {
        c = cfg.contour_re[0];
        if (c < rightmost_pole + contour_margin)
        {
            throw ContourError("Bessel contour must lie right of all Gamma poles");
        }
    }
    const double log_half_y = std::log(y / 2.0);
    auto rr = refine_until_converged(cfg, [&](double h) {
        const int half = half_node_count(cfg.height, h);
        auto sums = trapezoid_line(half, [&](int j) -> std::optional<complex> {
            const complex sv(c, h * j);
            return log_gamma((sv + nu) / 2.0) + log_gamma((sv - nu) / 2.0) - sv * log_half_y;
        });
        sums.scale(h / (2.0 * pi) / 4.0);
        return std::pair{sums, static_cast<std::size_t>(2 * half + 1)};
    });
    return rr;
}

/// K_nu(y) = int_0^inf exp(-y cosh u) cosh(nu u) du, by the trapezoid rule
/// with step halving (double-exponential decay makes it spectrally accurate).
inline complex bessel_k_exp(complex nu, double y)
{
    if (!(y > 0.0))
    {
        throw PreconditionViolation("bessel_k_exp requires y > 0");
    }
    if (nu.real() < 0.0)
    {
        nu = -nu;
    }
    const double nr = nu.real();
    // Exponent -y cosh u + nr u is concave with maximum at sinh u = nr / y.
    const double u_peak = std::asinh(nr / y);
    const double peak = -y * std::cosh(u_peak) + nr * u_peak;
    auto log_term = [&](double u) {
        const complex x = nu * u;
        return -y * std::cosh(u) + x + std::log(0.5 * (1.0 + std::exp(-2.0 * x)));
    };
    auto rule = [&](double h) {
        complex acc = 0.5 * std::exp(log_term(0.0));
        for (int j = 1;; ++j)
        {
            const double u = h * j;
            const double expo = -y * std::cosh(u) + nr * u;
            if (u > u_peak && expo < peak - 60.0)
            {
                break;
            }
            acc += std::exp(log_term(u));
        }
        return h * acc;
    };
    double h = 0.25;
    complex prev = rule(h);
    for (int r = 0; r < 12; ++r)
    {
        h /= 2.0;
        const complex cur = rule(h);
        if (std::abs(cur - prev) <= 1e-14 * std::abs(cur))
        {
            return finite_or_throw(cur, "bessel_k_exp");
        }
        prev = cur;
    }
    throw NonConvergence("bessel_k_exp did not converge");
}

struct W2Check
{
    complex lhs; ///< 2 sqrt(y) K_{2 a1}(2 pi y)
    complex rhs; ///< sqrt(y) (1/2 pi i) int T_{2,a}(s)(pi y)^{-2s} ds
    double rel_diff = 0.0;
};

/// Inverse Mellin transform of T_2 against the closed-form GL(2) Whittaker
/// function.
inline W2Check w2_check(complex a1, double y, const QuadratureConfig& cfg = {})
{
    cfg.validate();
    if (!(y > 0.0))
    {
        throw PreconditionViolation("w2_check requires y > 0");
    }
    const double rightmost_pole = std::abs(a1.real());
    double c = rightmost_pole + 0.5;
    if (!cfg.contour_re.empty())
    {
        c = cfg.contour_re[0];
        if (c < rightmost_pole + contour_margin)
        {
            throw ContourError("w2_check contour must lie right of all Gamma poles");
        }
    }
    const double log_pi_y = std::log(pi * y);
    auto rr = refine_until_converged(cfg, [&](double h) {
        const int half = half_node_count(cfg.height, h);
        auto sums = trapezoid_line(half, [&](int j) -> std::optional<complex> {
            const complex sv(c, h * j);
            return log_gamma(sv + a1) + log_gamma(sv - a1) - 2.0 * sv * log_pi_y;
        });
        sums.scale(h / (2.0 * pi));
        return std::pair{sums, static_cast<std::size_t>(2 * half + 1)};
    });
    W2Check out;
    out.lhs = 2.0 * std::sqrt(y) * bessel_k_exp(2.0 * a1, 2.0 * pi * y);
    out.rhs = std::sqrt(y) * rr.value;
    out.rel_diff = std::abs(out.lhs - out.rhs) / std::abs(out.lhs);
    return out;
}

} // namespace mellin

#endif // MELLIN_ENGINE_HPP_
