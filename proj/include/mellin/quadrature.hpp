// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_QUADRATURE_HPP_
#define MELLIN_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "scalar.hpp"

namespace mellin
{

enum class InnerTransform
{
    barnes,    ///< closed-form GL(3) transform inside the GL(4) integral
    recursive, ///< GL(3) transform by its own contour integral (3-fold total)
};

struct QuadratureConfig
{
    std::vector<double> contour_re; ///< Re z_j per integration variable; empty = automatic
    double height = 40.0;           ///< truncation |Im z_j| <= height
    double step = 0.05;             ///< trapezoid step on each vertical line
    double rel_tol = 1e-6;
    int max_refinements = 3;
    unsigned threads = 0; ///< worker cap; 0 = hardware concurrency
    InnerTransform inner = InnerTransform::barnes;

    void validate() const
    {
        if (!(height > 0.0) || !(step > 0.0) || !(rel_tol > 0.0) || max_refinements < 0)
        {
            throw PreconditionViolation("quadrature config requires height > 0, step > 0, rel_tol > 0");
        }
        if (step > height)
        {
            throw PreconditionViolation("quadrature step exceeds truncation height");
        }
    }

    [[nodiscard]] unsigned worker_count() const
    {
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        return threads == 0 ? hw : std::min(threads, hw);
    }
};

/// Minimum distance kept between a contour and the nearest pole of either
/// Gamma family.
inline constexpr double contour_margin = 0.3;

/// Terms whose log-magnitude is this far below the largest are dropped
/// (e^-46 ~ 1e-20).
inline constexpr double log_cutoff = 46.0;

/// Partial sums of a trapezoid rule at step h and, from the even-indexed
/// nodes of the same grid, at step 2h.
struct TrapezoidSums
{
    complex fine{0.0, 0.0};
    complex coarse{0.0, 0.0};
    double abs_sum = 0.0;                                      ///< sum of |term|, for roundoff
    double edge_log = -std::numeric_limits<double>::infinity(); ///< largest log|term| on the truncation boundary

    TrapezoidSums& operator+=(const TrapezoidSums& o)
    {
        fine += o.fine;
        coarse += o.coarse;
        abs_sum += o.abs_sum;
        edge_log = std::max(edge_log, o.edge_log);
        return *this;
    }

    void scale(double factor)
    {
        fine *= factor;
        coarse *= factor;
        abs_sum *= std::abs(factor);
        edge_log += std::log(std::abs(factor));
    }
};

/// Relative error estimate for a geometrically convergent trapezoid rule:
/// err(h) ~ err(2h)^2, plus roundoff and truncation contributions.
inline double estimate_rel_error(const TrapezoidSums& sums, std::size_t node_count)
{
    const double value = std::abs(sums.fine);
    if (value == 0.0)
    {
        return sums.abs_sum == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const double coarse_rel = std::abs(sums.fine - sums.coarse) / value;
    const double discretisation = coarse_rel > 1e-2 ? coarse_rel : coarse_rel * coarse_rel;
    const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * sums.abs_sum / value;
    const double truncation = std::exp(sums.edge_log) * static_cast<double>(node_count) / value;
    return discretisation + roundoff + truncation;
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index is
/// processed by exactly one worker; callers store results per index and
/// reduce in index order, so results do not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
        {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w] {
            try
            {
                for (std::size_t i = w; i < count; i += workers)
                {
                    fn(i);
                }
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
    {
        t.join();
    }
    for (auto& e : errors)
    {
        if (e)
        {
            std::rethrow_exception(e);
        }
    }
}

/// log(1/Gamma(z)), or nothing when 1/Gamma(z) = 0.
inline std::optional<complex> log_reciprocal_gamma(complex z)
{
    if (detail::near_nonpositive_integer(z, pole_tolerance))
    {
        return std::nullopt;
    }
    return -log_gamma(z);
}

/// Grid nodes t_j = j h for |j| <= half_count.
inline int half_node_count(double height, double step)
{
    return static_cast<int>(std::floor(height / step + 1e-9));
}

/// Sum of exp(log_term(j)) over j in [-half, half], split into the h and 2h
/// rules. `log_term` returns nullopt for an exactly vanishing node.
template <typename LogTerm>
TrapezoidSums trapezoid_line(int half, LogTerm&& log_term)
{
    std::vector<std::optional<complex>> logs;
    logs.reserve(static_cast<std::size_t>(2 * half + 1));
    double max_log = -std::numeric_limits<double>::infinity();
    for (int j = -half; j <= half; ++j)
    {
        logs.push_back(log_term(j));
        if (logs.back())
        {
            max_log = std::max(max_log, logs.back()->real());
        }
    }
    TrapezoidSums out;
    for (int j = -half; j <= half; ++j)
    {
        const auto& l = logs[static_cast<std::size_t>(j + half)];
        if (!l)
        {
            continue;
        }
        if (std::abs(j) == half)
        {
            out.edge_log = std::max(out.edge_log, l->real());
        }
        if (l->real() < max_log - log_cutoff)
        {
            continue;
        }
        const complex term = std::exp(*l);
        out.fine += term;
        out.abs_sum += std::abs(term);
        if (j % 2 == 0)
        {
            out.coarse += 2.0 * term;
        }
    }
    return out;
}

struct RuleResult
{
    complex value;
    double est_rel_error = 0.0;
    double step = 0.0;
    int refinements = 0;
};

/// Applies `rule(step)` (returning scaled TrapezoidSums and a node count),
/// halving the step until the estimate meets cfg.rel_tol.
template <typename Rule>
RuleResult refine_until_converged(const QuadratureConfig& cfg, Rule&& rule)
{
    double step = cfg.step;
    double last_est = std::numeric_limits<double>::infinity();
    for (int r = 0; r <= cfg.max_refinements; ++r)
    {
        const auto [sums, nodes] = rule(step);
        last_est = estimate_rel_error(sums, nodes);
        if (last_est <= cfg.rel_tol)
        {
            return {finite_or_throw(sums.fine, "vertical-line quadrature"), last_est, step, r};
        }
        step /= 2.0;
    }
    std::ostringstream msg;
    msg << "quadrature did not reach rel_tol " << cfg.rel_tol << " (estimate " << last_est << ") after "
        << cfg.max_refinements << " refinements";
    throw NonConvergence(msg.str());
}

} // namespace mellin

#endif // MELLIN_QUADRATURE_HPP_
