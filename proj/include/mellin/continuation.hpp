// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_CONTINUATION_HPP_
#define MELLIN_CONTINUATION_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "gl4.hpp"
#include "params.hpp"
#include "scalar.hpp"

namespace mellin
{

inline constexpr double pole_match_tolerance = 1e-9;
inline constexpr int max_continuation_depth = 10;

/// One polar divisor: s1 = -a_m - delta, s2 = -a_m - a_n - delta or
/// s3 = a_m - delta. Indices are 1-based; n is 0 unless variable == 2.
struct ResidueSpec
{
    int variable = 1;
    int m = 1;
    int n = 0;
    unsigned delta = 0;

    [[nodiscard]] complex location(const SpectralParams& a) const
    {
        if (a.n() != 4 || variable < 1 || variable > 3 || m < 1 || m > 4)
        {
            throw PreconditionViolation("pole family needs n = 4, variable in 1..3 and m in 1..4");
        }
        const complex am = a[static_cast<std::size_t>(m - 1)];
        const double d = delta;
        switch (variable)
        {
        case 1: return -am - d;
        case 2:
            if (n < 1 || n > 4 || n == m)
            {
                throw PreconditionViolation("s2 pole family needs two distinct indices");
            }
            return -am - a[static_cast<std::size_t>(n - 1)] - d;
        default: return am - d;
        }
    }

    [[nodiscard]] std::string describe() const
    {
        std::ostringstream out;
        out << "s" << variable << " pole, m=" << m;
        if (variable == 2)
        {
            out << ", n=" << n;
        }
        out << ", delta=" << delta;
        return out.str();
    }
};

struct PoleClassification
{
    std::vector<ResidueSpec> poles; ///< at most one per variable

    [[nodiscard]] bool regular() const noexcept { return poles.empty(); }
};

namespace detail
{

inline std::vector<ResidueSpec> families_for(int variable)
{
    std::vector<ResidueSpec> out;
    for (int m = 1; m <= 4; ++m)
    {
        if (variable == 2)
        {
            for (int n = m + 1; n <= 4; ++n)
            {
                out.push_back({2, m, n, 0});
            }
        }
        else
        {
            out.push_back({variable, m, 0, 0});
        }
    }
    return out;
}

// Depth at which s lies in the family, if it does: family value at depth 0
// minus s must be a nonnegative integer.
inline std::optional<unsigned> match_depth(complex family_root, complex s)
{
    const complex d = family_root - s;
    const double nearest = std::round(d.real());
    if (nearest < 0.0 || std::abs(d - complex(nearest, 0.0)) > pole_match_tolerance)
    {
        return std::nullopt;
    }
    return static_cast<unsigned>(nearest);
}

} // namespace detail

/// Locates s against the three pole families of T_{4,a}.
inline PoleClassification classify_point(const SpectralParams& a, const MellinPoint& s)
{
    if (a.n() != 4)
    {
        throw PreconditionViolation("classify_point needs n = 4");
    }
    check_dimension(a, s);
    PoleClassification out;
    for (int v = 1; v <= 3; ++v)
    {
        std::vector<ResidueSpec> hits;
        for (auto fam : detail::families_for(v))
        {
            if (auto d = detail::match_depth(fam.location(a), s[static_cast<std::size_t>(v - 1)]))
            {
                fam.delta = *d;
                hits.push_back(fam);
            }
        }
        if (hits.size() > 1)
        {
            std::ostringstream msg;
            msg << "s" << v << " lies on " << hits.size() << " coinciding pole families";
            throw AmbiguousClassification(msg.str());
        }
        if (!hits.empty())
        {
            out.poles.push_back(hits.front());
        }
    }
    return out;
}

/// Lower bounds on Re s_k above which eval_t integrates directly. The three
/// conditions are independent of one another.
inline std::array<double, 3> interior_thresholds(const SpectralParams& a, double margin = contour_margin)
{
    double min_ak = std::numeric_limits<double>::infinity();
    double max_ak = -std::numeric_limits<double>::infinity();
    for (int k = 1; k < 4; ++k)
    {
        min_ak = std::min(min_ak, a[static_cast<std::size_t>(k)].real());
        max_ak = std::max(max_ak, a[static_cast<std::size_t>(k)].real());
    }
    const double a1 = a[0].real();
    return {2.0 * margin - min_ak, 2.0 * margin + std::max(-a1 - min_ak, a1 + max_ak), 2.0 * margin + max_ak};
}

enum class ContinuationRoute
{
    all_shifts,      ///< the all-variable expansion, single-variable ones as fallback
    single_variable, ///< s1, then s2, then s3 expansions only
};

struct ContinuationStep
{
    Gl4Rule rule;
    std::array<int, 3> at; ///< shift of the point the rule was applied at
};

struct ContinuationPlan
{
    ContinuationRoute route = ContinuationRoute::all_shifts;
    std::vector<ContinuationStep> steps;
    std::vector<std::array<int, 3>> anchors; ///< shifts evaluated by quadrature
};

struct ContinuationResult
{
    complex value;
    double est_rel_error = 0.0;
    ContinuationPlan plan;
};

namespace detail
{

inline std::optional<Expansion<complex>> try_expansion(Gl4Rule r, const Gl4Point<complex>& p)
{
    try
    {
        return expansion(r, p);
    }
    catch (const DegenerateDenominator&)
    {
        return std::nullopt;
    }
}

} // namespace detail

/// Expansion of T(s) over anchor points in the convergence region, without
/// evaluating anything.
inline std::pair<ContinuationPlan, std::map<std::array<int, 3>, complex>>
plan_continuation(const SpectralParams& a, const MellinPoint& s, ContinuationRoute route)
{
    const auto classification = classify_point(a, s);
    if (!classification.regular())
    {
        throw PoleHit("target is a pole of T: " + classification.poles.front().describe());
    }
    const auto base = to_gl4_point(a, s);
    const auto th = interior_thresholds(a);
    auto deficient = [&](const std::array<int, 3>& sh) {
        std::array<bool, 3> out{};
        for (std::size_t i = 0; i < 3; ++i)
        {
            out[i] = !((s[i].real() + sh[i]) > th[i]);
        }
        return out;
    };

    ContinuationPlan plan;
    plan.route = route;
    std::map<std::array<int, 3>, complex> pending{{{0, 0, 0}, complex(1.0, 0.0)}};
    std::map<std::array<int, 3>, complex> anchors;
    while (!pending.empty())
    {
        // std::map orders shifts lexicographically; always expand the lowest.
        const auto [shift, coef] = *pending.begin();
        pending.erase(pending.begin());
        const auto need = deficient(shift);
        if (!need[0] && !need[1] && !need[2])
        {
            anchors[shift] += coef;
            continue;
        }
        for (int c : shift)
        {
            if (c > max_continuation_depth)
            {
                throw PreconditionViolation("continuation would need more than 10 unit shifts in one coordinate");
            }
        }
        const auto point = base.shifted(shift);
        std::vector<Gl4Rule> candidates;
        if (route == ContinuationRoute::all_shifts)
        {
            candidates.push_back(Gl4Rule::all);
        }
        if (need[0])
        {
            candidates.insert(candidates.end(), {Gl4Rule::s1a, Gl4Rule::s1b});
        }
        else if (need[1])
        {
            candidates.insert(candidates.end(), {Gl4Rule::s2, Gl4Rule::s3c});
        }
        else
        {
            candidates.insert(candidates.end(), {Gl4Rule::s3a, Gl4Rule::s3b});
        }
        std::optional<Expansion<complex>> chosen;
        for (Gl4Rule r : candidates)
        {
            if ((chosen = detail::try_expansion(r, point)))
            {
                plan.steps.push_back({r, shift});
                break;
            }
        }
        if (!chosen)
        {
            throw HypothesisFailure("every applicable shift relation fails its genericity hypothesis");
        }
        for (const auto& term : *chosen)
        {
            const std::array<int, 3> next{shift[0] + term.shift[0], shift[1] + term.shift[1],
                                          shift[2] + term.shift[2]};
            pending[next] += coef * term.coefficient;
        }
    }
    for (const auto& [sh, c] : anchors)
    {
        plan.anchors.push_back(sh);
    }
    return {plan, anchors};
}

/// T_{4,a}(s) anywhere off the polar divisors, by expanding over shifted
/// points inside the convergence region and integrating there.
inline ContinuationResult continue_t4(const SpectralParams& a, const MellinPoint& s, const QuadratureConfig& cfg = {},
                                      ContinuationRoute route = ContinuationRoute::all_shifts)
{
    auto [plan, anchors] = plan_continuation(a, s, route);
    ContinuationResult out;
    out.value = complex(0.0, 0.0);
    double abs_sum = 0.0;
    double worst = 0.0;
    const auto base = to_gl4_point(a, s);
    for (const auto& [shift, coef] : anchors)
    {
        const auto ev = eval_t(a, mellin_of(base.shifted(shift)), cfg);
        const complex term = coef * ev.value;
        out.value += term;
        abs_sum += std::abs(term);
        worst = std::max(worst, ev.est_rel_error);
    }
    out.value = finite_or_throw(out.value, "continue_t4");
    // Cancellation among anchor terms amplifies their relative error.
    out.est_rel_error = std::abs(out.value) > 0.0 ? worst * abs_sum / std::abs(out.value) : worst;
    out.plan = std::move(plan);
    return out;
}

/// (1/2 pi i) times the integral of f over the circle |z - center| = radius,
/// by the trapezoid rule in the angle.
template <typename F>
complex circle_integral(F&& f, complex center, double radius, int nodes = 64)
{
    if (nodes < 64)
    {
        throw PreconditionViolation("residue circle needs at least 64 nodes");
    }
    complex acc{0.0, 0.0};
    for (int j = 0; j < nodes; ++j)
    {
        const double theta = 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(nodes);
        const complex w = std::polar(radius, theta);
        acc += f(center + w) * w;
    }
    return acc / static_cast<double>(nodes);
}

/// Distance from `pole` to the nearest other member of any pole family in
/// the same variable.
inline double nearest_other_pole(const SpectralParams& a, int variable, complex pole)
{
    double best = std::numeric_limits<double>::infinity();
    for (auto fam : detail::families_for(variable))
    {
        const complex root = fam.location(a);
        for (int d = 0; d <= max_continuation_depth + 2; ++d)
        {
            const double dist = std::abs(root - static_cast<double>(d) - pole);
            if (dist > pole_match_tolerance)
            {
                best = std::min(best, dist);
            }
        }
    }
    return best;
}

inline constexpr double default_radius_fraction = 0.1;

/// Contour-integral residue of T_{4,a} at the pole `spec` in its variable,
/// with the other two coordinates taken from `free` (the pinned entry of
/// `free` is ignored). radius <= 0 selects the default.
inline complex numeric_residue(const SpectralParams& a, const ResidueSpec& spec, const MellinPoint& free,
                               double radius = 0.0, const QuadratureConfig& cfg = {}, int nodes = 64,
                               ContinuationRoute route = ContinuationRoute::all_shifts)
{
    check_dimension(a, free);
    const complex center = spec.location(a);
    const double room = nearest_other_pole(a, spec.variable, center);
    if (radius <= 0.0)
    {
        radius = default_radius_fraction * room;
    }
    if (!(radius < room))
    {
        throw CircleTooLarge("residue circle would enclose another pole");
    }
    const std::size_t v = static_cast<std::size_t>(spec.variable - 1);
    return circle_integral(
        [&](complex z) {
            std::vector<complex> pt = free.values();
            pt[v] = z;
            return continue_t4(a, MellinPoint(pt), cfg, route).value;
        },
        center, radius, nodes);
}

} // namespace mellin

#endif // MELLIN_CONTINUATION_HPP_
