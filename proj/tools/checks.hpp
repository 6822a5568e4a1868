// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_TOOLS_CHECKS_HPP_
#define MELLIN_TOOLS_CHECKS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <mellin/mellin.hpp>

#include "report.hpp"
#include "sampling.hpp"

namespace mellin::checks
{

using report::CheckResult;
using report::Group;
using report::json;
using sampling::Rng;

inline constexpr std::uint64_t default_seed = 20261016;

struct CheckOptions
{
    std::uint64_t seed = default_seed;
    QuadratureConfig cfg;
    int trials = 0;           ///< sample count override; 0 keeps each check's default
    bool corrupt = false;     ///< negative control: perturb one term per trial
    bool keep_trials = false; ///< record every residual in the report
    bool timing = false;      ///< add wall-clock seconds to the report

    [[nodiscard]] int count(int fallback) const { return trials > 0 ? trials : fallback; }
};

namespace detail
{

inline double rel(complex x, complex ref)
{
    const double scale = std::abs(ref);
    return scale > 0.0 ? std::abs(x - ref) / scale : std::abs(x - ref);
}

inline std::string fmt(const complex& z)
{
    std::string out = "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
    return out;
}

// Corruption used by the negative control: a coefficient off by 1/7.
inline complex taint(complex c, bool on)
{
    return on ? c * (8.0 / 7.0) : c;
}

inline rational taint(const rational& c, bool on)
{
    return on ? c * rational(8) / rational(7) : c;
}

struct Gl4Sample
{
    SpectralParams a;
    MellinPoint s;
};

// Small spectral parameters and Re s_k in [1, 2]: inside the convergence
// region with room for every unit shift used by the checks.
inline Gl4Sample random_gl4(Rng& rng)
{
    std::vector<complex> lead;
    for (int k = 0; k < 3; ++k)
    {
        lead.push_back(rng.in_box(-0.1, 0.1, -0.3, 0.3));
    }
    std::vector<complex> s;
    for (int k = 0; k < 3; ++k)
    {
        s.push_back(rng.in_box(1.0, 2.0, -0.5, 0.5));
    }
    return {SpectralParams::from_leading(lead), MellinPoint(s)};
}

inline Gl4Sample random_gl3(Rng& rng)
{
    std::vector<complex> lead;
    for (int k = 0; k < 2; ++k)
    {
        lead.push_back(rng.in_box(-0.2, 0.2, -0.5, 0.5));
    }
    std::vector<complex> s;
    for (int k = 0; k < 2; ++k)
    {
        s.push_back(rng.in_box(0.8, 2.0, -1.0, 1.0));
    }
    return {SpectralParams::from_leading(lead), MellinPoint(s)};
}

inline std::vector<int> random_permutation(Rng& rng, int n)
{
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
    {
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.integer(0, i))]);
    }
    if (std::is_sorted(perm.begin(), perm.end()))
    {
        std::swap(perm[0], perm[1]);
    }
    return perm;
}

// T_4 at s + shift by quadrature, memoized per shift.
class T4Table
{
public:
    T4Table(SpectralParams a, MellinPoint s, QuadratureConfig cfg)
        : a_(std::move(a)), s_(std::move(s)), cfg_(std::move(cfg))
    {
    }

    complex operator()(const std::array<int, 3>& shift)
    {
        auto it = cache_.find(shift);
        if (it == cache_.end())
        {
            it = cache_.emplace(shift, eval_t(a_, s_.shifted(shift), cfg_).value).first;
        }
        return it->second;
    }

private:
    SpectralParams a_;
    MellinPoint s_;
    QuadratureConfig cfg_;
    std::map<std::array<int, 3>, complex> cache_;
};

// |sum c T| / sum |c T|.
template <typename TFunc>
double relation_residual(const Relation<complex>& rel, TFunc&& t, bool corrupt)
{
    complex acc{0.0, 0.0};
    double scale = 0.0;
    bool first = true;
    for (const auto& term : rel)
    {
        const complex v = taint(term.coefficient, corrupt && first) * t(term.shift);
        first = false;
        acc += v;
        scale += std::abs(v);
    }
    return scale > 0.0 ? std::abs(acc) / scale : std::abs(acc);
}

inline Gl4Point<rational> random_rational_gl4(Rng& rng)
{
    const std::array<rational, 3> lead{rng.ratio(), rng.ratio(), rng.ratio()};
    const std::array<rational, 3> s{rng.ratio(), rng.ratio(), rng.ratio()};
    return Gl4Point<rational>::make(lead, s);
}

inline int shift_of(const rational& shifted, const rational& base)
{
    return static_cast<rational>(shifted - base).convert_to<int>();
}

} // namespace detail

/// Criterion 1: Gamma translation and reflection identities.
inline CheckResult check_gamma(const CheckOptions& o)
{
    return report::timed(1, "gamma", "Gamma kernel identities", 1.0, o.keep_trials, [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 1));
        auto& translation = r.group("translation Gamma(z+1) = z Gamma(z)", 1e-11);
        auto& reflection = r.group("reflection Gamma(z) Gamma(1-z) = pi / sin(pi z)", 1e-11);
        auto& poch = r.group("pochhammer(z, k) = Gamma(z+k) / Gamma(z)", 1e-11);
        const int n = o.count(1000);
        for (int i = 0; i < n; ++i)
        {
            complex z = rng.in_box(-15.0, 15.0, -15.0, 15.0);
            while (std::abs(z - std::round(z.real())) < 1e-3)
            {
                z = rng.in_box(-15.0, 15.0, -15.0, 15.0);
            }
            const std::string label = detail::fmt(z);
            try
            {
                const complex gz = gamma(z);
                translation.add(detail::rel(detail::taint(z, o.corrupt) * gz, gamma(z + 1.0)), label);
                reflection.add(detail::rel(gz * gamma(1.0 - z), pi / std::sin(pi * z)), label);
                const unsigned k = static_cast<unsigned>(i % 8);
                if (!mellin::detail::near_nonpositive_integer(z + static_cast<double>(k), 1e-3))
                {
                    poch.add(detail::rel(pochhammer(z, k), gamma(z + static_cast<double>(k)) / gz), label);
                }
            }
            catch (const Error& e)
            {
                translation.add_error(e, label);
            }
        }
        auto& split = r.group("exact (a+k)_{d-k} = (a+g)_{d-g} (a+k)_{g-k}", 0.0, true);
        for (int i = 0; i < o.count(100); ++i)
        {
            const rational a = rng.ratio();
            const auto d = static_cast<unsigned>(rng.integer(0, 8));
            const auto g = static_cast<unsigned>(rng.integer(0, d));
            const auto k = static_cast<unsigned>(rng.integer(0, g));
            const rational ak = a + rational(k);
            split.add_exact(pochhammer(ak, d - k) ==
                            pochhammer(rational(a + rational(g)), d - g) * pochhammer(ak, g - k));
        }
    });
}

/// Criterion 2: the GL(2) closed form and its one-step recurrence.
inline CheckResult check_gl2(const CheckOptions& o)
{
    return report::timed(2, "gl2", "GL(2) closed form and recurrence", 0.0, o.keep_trials, [&](CheckResult& r) {
        auto& anchors = r.group("t2 anchors", 1e-12);
        struct Anchor
        {
            complex a1, s1, value;
            const char* label;
        };
        const std::array<Anchor, 3> list{{{0.0, 0.5, pi, "a1=0 s1=1/2"},
                                          {0.5, 1.5, 1.0, "a1=1/2 s1=3/2"},
                                          {complex(0.0, 0.8), 1.0, 0.40985265287975206481, "a1=0.8i s1=1"}}};
        auto& zero_fold = r.group("eval_t(n=2) equals t2", 0.0, true);
        for (const auto& x : list)
        {
            const auto a = SpectralParams::from_leading({x.a1});
            const MellinPoint s({x.s1});
            const complex v = t2(a, s);
            anchors.add(detail::rel(detail::taint(v, o.corrupt), x.value), x.label);
            zero_fold.add_exact(eval_t(a, s, o.cfg).value == v, x.label);
        }
        Rng rng(sampling::substream(o.seed, 2));
        auto& recur = r.group("exact T(s) = T(s+1) / ((s+a1)(s-a1))", 0.0, true);
        for (int i = 0; i < o.count(100); ++i)
        {
            const rational a1 = rng.ratio();
            const rational s1 = rng.ratio();
            try
            {
                const auto rel = build_recurrence<rational>(2, a1);
                const std::vector<rational> s{s1};
                // T(s + k) / T(s) = (s + a1)_k (s - a1)_k.
                auto t = [&](std::span<const rational> pt) {
                    const auto k = static_cast<unsigned>(detail::shift_of(pt[0], s1));
                    return detail::taint(pochhammer(rational(s1 + a1), k) * pochhammer(rational(s1 - a1), k),
                                         o.corrupt && k == 1);
                };
                recur.add_exact(rel.terms.size() == 2 && rel.residual(std::span<const rational>(s), t) == 0);
            }
            catch (const DegenerateDenominator&)
            {
                --i;
            }
        }
    });
}

/// Criterion 3: Mellin-Barnes Bessel integral against the exponential
/// integral, and Mellin inversion of T_2.
inline CheckResult check_bessel(const CheckOptions& o)
{
    return report::timed(3, "bessel", "Bessel and GL(2) Whittaker cross-checks", 30.0, o.keep_trials,
                         [&](CheckResult& r) {
        auto& mb = r.group("Mellin-Barnes K_nu vs exponential integral", 1e-8);
        const std::array<std::pair<complex, double>, 6> pairs{{{0.5, 1.0},
                                                               {0.0, 2.0},
                                                               {complex(1.0 / 3.0, 1.0), 0.7},
                                                               {0.0, 5.0},
                                                               {0.6, pi},
                                                               {complex(0.0, 0.25), 1.5}}};
        for (const auto& [nu, y] : pairs)
        {
            const std::string label = "nu=" + detail::fmt(nu) + " y=" + std::to_string(y);
            try
            {
                const complex lhs = bessel_k_mb(nu, y, o.cfg).value;
                mb.add(detail::rel(detail::taint(lhs, o.corrupt), bessel_k_exp(nu, y)), label);
            }
            catch (const Error& e)
            {
                mb.add_error(e, label);
            }
        }
        auto& frozen = r.group("exponential integral vs reference values", 1e-10);
        const std::array<std::pair<std::pair<complex, double>, complex>, 5> refs{{
            {{0.5, 1.0}, 0.46106850444789455844},
            {{0.0, 2.0}, 0.11389387274953343565},
            {{0.0, 5.0}, 0.0036910983340425942747},
            {{complex(1.0 / 3.0, 1.0), 0.7}, complex(0.40419967211376649273, 0.14411799544612434793)},
            {{0.6, pi}, 0.031028959207216202528},
        }};
        for (const auto& [arg, value] : refs)
        {
            frozen.add(detail::rel(bessel_k_exp(arg.first, arg.second), value), "nu=" + detail::fmt(arg.first));
        }
        auto& w2 = r.group("2 sqrt(y) K_{2a}(2 pi y) vs inverse Mellin transform of T_2", 1e-7);
        const std::array<std::pair<complex, double>, 3> wpairs{{{0.0, 1.0}, {0.3, 0.5}, {complex(0.0, 0.25), 1.0}}};
        for (const auto& [a1, y] : wpairs)
        {
            const std::string label = "a1=" + detail::fmt(a1) + " y=" + std::to_string(y);
            try
            {
                const auto c = w2_check(a1, y, o.cfg);
                w2.add(detail::rel(detail::taint(c.rhs, o.corrupt), c.lhs), label);
            }
            catch (const Error& e)
            {
                w2.add_error(e, label);
            }
        }
    });
}

/// Criterion 4: GL(3) quadrature against the Barnes closed form.
inline CheckResult check_gl3(const CheckOptions& o)
{
    return report::timed(4, "gl3", "GL(3) quadrature vs closed form", 60.0, o.keep_trials, [&](CheckResult& r) {
        auto& anchor = r.group("a = 0, s = (1, 1) gives 1", 1e-6);
        anchor.add(detail::rel(eval_t(SpectralParams::from_leading({0.0, 0.0}), MellinPoint({1.0, 1.0}), o.cfg).value,
                               1.0));
        auto& frozen = r.group("reference value", 1e-6);
        {
            const auto a = SpectralParams::from_leading({complex(0.1, 0.2), complex(-0.05, 0.3)});
            const MellinPoint s({complex(1.2, 0.1), complex(1.5, -0.2)});
            frozen.add(detail::rel(eval_t(a, s, o.cfg).value,
                                   complex(0.21835505169346295237, 0.0044491669267445496574)));
        }
        auto& random = r.group("eval_t vs closed form at random interior points", 1e-6);
        Rng rng(sampling::substream(o.seed, 4));
        for (int i = 0; i < o.count(10); ++i)
        {
            const auto [a, s] = detail::random_gl3(rng);
            const std::string label = "s=" + detail::fmt(s[0]) + "," + detail::fmt(s[1]);
            try
            {
                random.add(detail::rel(detail::taint(eval_t(a, s, o.cfg).value, o.corrupt), t3_barnes(a, s)), label);
            }
            catch (const Error& e)
            {
                random.add_error(e, label);
            }
        }
    });
}

/// Criterion 5: the alpha-coefficient sum over sequences without adjacent ones.
inline CheckResult check_lemma(const CheckOptions& o)
{
    return report::timed(5, "lemma", "Sum over no-adjacent sequences vanishes", 10.0, o.keep_trials,
                         [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 5));
        for (int n = 2; n <= 8; ++n)
        {
            auto& exact = r.group("exact, n = " + std::to_string(n), 0.0, true);
            for (int i = 0; i < o.count(100); ++i)
            {
                const rational a1 = rng.ratio();
                std::vector<rational> s;
                std::vector<rational> z;
                for (int k = 0; k < n - 1; ++k)
                {
                    s.push_back(rng.ratio());
                }
                for (int k = 0; k < n - 2; ++k)
                {
                    z.push_back(rng.ratio());
                }
                try
                {
                    rational sum = lemma_sum<rational>(n, a1, s, z).sum;
                    if (o.corrupt)
                    {
                        sum += rational(1) / rational(7);
                    }
                    exact.add_exact(sum == 0);
                }
                catch (const DegenerateDenominator&)
                {
                    --i;
                }
            }
            auto& floating = r.group("floating point, n = " + std::to_string(n), 1e-10);
            for (int i = 0; i < o.count(100); ++i)
            {
                const complex a1 = rng.in_box(-1.0, 1.0, -1.0, 1.0);
                std::vector<complex> s;
                std::vector<complex> z;
                for (int k = 0; k < n - 1; ++k)
                {
                    s.push_back(rng.in_box(-2.0, 2.0, -2.0, 2.0));
                }
                for (int k = 0; k < n - 2; ++k)
                {
                    z.push_back(rng.in_box(-2.0, 2.0, -2.0, 2.0));
                }
                try
                {
                    const auto ls = lemma_sum<complex>(n, a1, s, z);
                    const complex sum = o.corrupt ? ls.sum + ls.max_term / 7.0 : ls.sum;
                    floating.add(std::abs(sum) / ls.max_term);
                }
                catch (const DegenerateDenominator&)
                {
                    --i;
                }
            }
        }
    });
}

/// Criterion 6: the general recurrence with quadrature values of T_4, plus
/// exact forms for n = 3 and the coefficient match at n = 4.
inline CheckResult check_recurrence(const CheckOptions& o)
{
    return report::timed(6, "recurrence", "General-n recurrence on T", 600.0, o.keep_trials, [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 6));
        auto& general = r.group("general recurrence, n = 4, quadrature T", 1e-4);
        auto& five = r.group("five-term GL(4) relation, quadrature T", 1e-4);
        for (int i = 0; i < o.count(10); ++i)
        {
            const auto [a, s] = detail::random_gl4(rng);
            const std::string label = "s=" + detail::fmt(s[0]) + "," + detail::fmt(s[1]) + "," + detail::fmt(s[2]);
            try
            {
                detail::T4Table t(a, s, o.cfg);
                const auto rel = build_recurrence<complex>(4, a[0]);
                Relation<complex> terms;
                for (const auto& term : rel.terms)
                {
                    terms.push_back({{term.shift[0], term.shift[1], term.shift[2]},
                                     term.coefficient(std::span<const complex>(s.values()))});
                }
                general.add(detail::relation_residual(terms, t, o.corrupt), label);
                five.add(detail::relation_residual(relation_five_term(to_gl4_point(a, s)), t, o.corrupt), label);
            }
            catch (const Error& e)
            {
                general.add_error(e, label);
            }
        }
        auto& gl3 = r.group("exact, n = 3, closed-form T ratios", 0.0, true);
        for (int i = 0; i < o.count(100); ++i)
        {
            const std::array<rational, 3> a{rng.ratio(), rng.ratio(), 0};
            const std::array<rational, 3> full{a[0], a[1], -(a[0] + a[1])};
            const std::vector<rational> s{rng.ratio(), rng.ratio()};
            // T(s + mu) / T(s) from the Barnes closed form.
            auto t = [&](std::span<const rational> pt) {
                const auto m1 = static_cast<unsigned>(detail::shift_of(pt[0], s[0]));
                const auto m2 = static_cast<unsigned>(detail::shift_of(pt[1], s[1]));
                rational v(1);
                for (const auto& ak : full)
                {
                    v *= pochhammer(rational(s[0] + ak), m1) * pochhammer(rational(s[1] - ak), m2);
                }
                v /= pochhammer(rational(s[0] + s[1]), m1 + m2);
                return detail::taint(v, o.corrupt && m1 == 1);
            };
            try
            {
                gl3.add_exact(build_recurrence<rational>(3, full[0]).residual(std::span<const rational>(s), t) == 0);
            }
            catch (const Error&)
            {
                --i;
            }
        }
        auto& match = r.group("exact, n = 4 coefficients equal the five-term display", 0.0, true);
        for (int i = 0; i < o.count(50); ++i)
        {
            const auto p = detail::random_rational_gl4(rng);
            try
            {
                const auto rel = build_recurrence<rational>(4, p.a[0]);
                const auto five_terms = relation_five_term(p);
                const std::vector<rational> s(p.s.begin(), p.s.end());
                bool ok = rel.terms.size() == five_terms.size();
                for (const auto& term : rel.terms)
                {
                    const std::array<int, 3> sh{term.shift[0], term.shift[1], term.shift[2]};
                    auto it = std::find_if(five_terms.begin(), five_terms.end(),
                                           [&](const auto& f) { return f.shift == sh; });
                    ok = ok && it != five_terms.end() &&
                         detail::taint(term.coefficient(std::span<const rational>(s)), o.corrupt) == it->coefficient;
                }
                match.add_exact(ok);
            }
            catch (const DegenerateDenominator&)
            {
                --i;
            }
        }
    });
}

/// Criterion 7: T_4 from the shift expansions, and the intermediate
/// relations on exact placeholders.
inline CheckResult check_gl4(const CheckOptions& o)
{
    return report::timed(7, "gl4", "GL(4) shift expansions and intermediate relations", 600.0, o.keep_trials,
                         [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 7));
        std::map<Gl4Rule, Group*> groups;
        for (Gl4Rule rule : all_gl4_rules)
        {
            groups[rule] = &r.group("reconstruct " + std::string(rule_name(rule)) + " vs eval_t", 1e-4);
        }
        for (int i = 0; i < o.count(10); ++i)
        {
            const auto [a, s] = detail::random_gl4(rng);
            const auto p = to_gl4_point(a, s);
            const std::string label = "s=" + detail::fmt(s[0]) + "," + detail::fmt(s[1]) + "," + detail::fmt(s[2]);
            detail::T4Table t(a, s, o.cfg);
            for (Gl4Rule rule : all_gl4_rules)
            {
                try
                {
                    const auto terms = expansion(rule, p);
                    const complex v = reconstruct(rule, p, detail::taint(t(terms[0].shift), o.corrupt),
                                                  t(terms[1].shift));
                    groups[rule]->add(detail::rel(v, t({0, 0, 0})), label);
                }
                catch (const Error& e)
                {
                    groups[rule]->add_error(e, label);
                }
            }
        }
        auto& inter = r.group("exact intermediate relations on placeholders", 0.0, true);
        auto& expand = r.group("exact expansions on placeholders", 0.0, true);
        for (int i = 0; i < o.count(5); ++i)
        {
            const auto base = detail::random_rational_gl4(rng);
            try
            {
                const auto field = consistent_placeholders(base, rng.engine());
                auto t = field.view();
                for (Gl4Intermediate rel : all_gl4_intermediates)
                {
                    auto terms = intermediate_relation(rel, base);
                    terms.front().coefficient = detail::taint(terms.front().coefficient, o.corrupt);
                    inter.add_exact(apply_terms(terms, t) == 0, std::string(intermediate_name(rel)));
                }
                for (Gl4Rule rule : all_gl4_rules)
                {
                    auto terms = as_relation(expansion(rule, base));
                    terms.back().coefficient = detail::taint(terms.back().coefficient, o.corrupt);
                    expand.add_exact(apply_terms(terms, t) == 0, std::string(rule_name(rule)));
                }
            }
            catch (const DegenerateDenominator&)
            {
                --i;
            }
        }
    });
}

/// Criterion 8: permutation of a and the reversal transform.
inline CheckResult check_symmetry(const CheckOptions& o)
{
    return report::timed(8, "symmetry", "Permutation and reversal symmetry", 0.0, o.keep_trials, [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 8));
        for (int n : {3, 4})
        {
            auto& perm = r.group("permutation of a, n = " + std::to_string(n), 1e-5);
            auto& rev = r.group("reversal (s reversed, -a), n = " + std::to_string(n), 1e-5);
            for (int i = 0; i < o.count(10); ++i)
            {
                const auto [a, s] = n == 3 ? detail::random_gl3(rng) : detail::random_gl4(rng);
                const auto sigma = detail::random_permutation(rng, n);
                std::string label = "perm=";
                for (int k : sigma)
                {
                    label += std::to_string(k + 1);
                }
                try
                {
                    const complex base = eval_t(a, s, o.cfg).value;
                    const complex permuted = eval_t(a.permuted(sigma), s, o.cfg).value;
                    perm.add(detail::rel(detail::taint(permuted, o.corrupt), base), label);
                    const complex reversed = eval_t(a.negated(), s.reversed(), o.cfg).value;
                    rev.add(detail::rel(detail::taint(reversed, o.corrupt), base), label);
                }
                catch (const Error& e)
                {
                    perm.add_error(e, label);
                }
            }
        }
    });
}

/// Criterion 9: the three parts of the p_delta lemma, exactly.
inline CheckResult check_pdelta(const CheckOptions& o)
{
    return report::timed(9, "pdelta", "p_delta identities", 30.0, o.keep_trials, [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 9));
        auto& anchor = r.group("exact anchors p_0 = 1, p_1(2,3,5;7,11,13) = 971", 0.0, true);
        anchor.add_exact(p_delta<rational>(0, 2, 3, 5, 7, 11, 13) == 1);
        anchor.add_exact(p_delta<rational>(1, 2, 3, 5, 7, 11, 13) == detail::taint(rational(971), o.corrupt));
        auto draw = [&](unsigned delta) {
            return PDeltaArgs<rational>{delta,       rng.ratio(), rng.ratio(), rng.ratio(),
                                        rng.ratio(), rng.ratio(), rng.ratio()};
        };
        auto& a = r.group("exact part (a) recurrence in delta", 0.0, true);
        auto& b = r.group("exact part (b) three-term identity", 0.0, true);
        auto& c = r.group("exact part (c) divisibility", 0.0, true);
        const rational bump = o.corrupt ? rational(1) / rational(7) : rational(0);
        for (unsigned delta = 0; delta <= 6; ++delta)
        {
            const std::string label = "delta=" + std::to_string(delta);
            for (int i = 0; i < o.count(100); ++i)
            {
                a.add_exact(check_recur_a(draw(delta)) + bump == 0, label);
                b.add_exact(check_recur_b(on_recur_b_surface(draw(delta))) + bump == 0, label);
                auto x = draw(delta);
                const auto gamma_idx = static_cast<unsigned>(rng.integer(0, delta));
                const rational pin = -rational(gamma_idx);
                switch (rng.integer(0, 2))
                {
                case 0: x.b = pin; break;
                case 1: x.c = pin; break;
                default: x.d = pin; break;
                }
                if (o.corrupt)
                {
                    const unsigned len = delta - gamma_idx;
                    const rational g(gamma_idx);
                    const rational factor = pochhammer(rational(x.e + g), len) * pochhammer(rational(x.f + g), len) *
                                            pochhammer(rational(x.g + g), len);
                    c.add_exact(p_delta(x) == detail::taint(factor, true) * pdelta_short_sum(x, gamma_idx), label);
                }
                else
                {
                    c.add_exact(check_divisibility(x, gamma_idx), label);
                }
            }
        }
    });
}

namespace detail
{

inline std::array<complex, 4> random_generic_a(Rng& rng)
{
    while (true)
    {
        std::vector<complex> lead;
        for (int k = 0; k < 3; ++k)
        {
            lead.push_back(rng.in_box(-0.3, 0.3, -0.4, 0.4));
        }
        const auto a = spectral4(SpectralParams::from_leading(lead));
        if (genericity_gap(a, 3) > 0.05)
        {
            return a;
        }
    }
}

inline SpectralParams params_of(const Spectral4& a)
{
    return SpectralParams::from_full({a.begin(), a.end()});
}

inline constexpr std::array<std::pair<int, int>, 6> index_pairs{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

// Residue of f at `center` by a circle of a tenth of the distance to the
// next pole of the same family set.
template <typename F>
complex contour_residue(const Spectral4& a, int variable, complex center, F&& f)
{
    const double radius = default_radius_fraction * nearest_other_pole(params_of(a), variable, center);
    return circle_integral(std::forward<F>(f), center, radius);
}

} // namespace detail

/// Criterion 10: closed-form residues against contour integrals.
inline CheckResult check_residues(const CheckOptions& o)
{
    return report::timed(10, "residues", "Residues of T_4", 1200.0, o.keep_trials, [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 10));
        QuadratureConfig rcfg = o.cfg;
        rcfg.step = std::max(rcfg.step, 0.1);
        r.notes.push_back("contour oracles for single residues use quadrature step " + std::to_string(rcfg.step));
        auto& single = r.group("single residues vs contour of continued T", 1e-4);
        auto& dbl = r.group("double residues vs contour of single residues", 1e-4);
        auto& order = r.group("double residues, both orders agree", 1e-3);
        auto& triple = r.group("triple residue vs contour of double residue", 1e-4);
        auto& limit = r.group("triple residue as limit of the double residue", 1e-5);
        auto& missing = r.group("finite where a Gamma factor is missing", 0.0, true);
        auto& relabel = r.group("relabeling a with the indices leaves residues fixed", 1e-12);
        const int draws = o.count(5);
        for (int d = 0; d < draws; ++d)
        {
            const auto a = detail::random_generic_a(rng);
            const auto params = detail::params_of(a);
            const complex s1 = rng.in_box(0.2, 0.8, -0.3, 0.3);
            const complex s2 = rng.in_box(0.2, 0.8, -0.3, 0.3);
            const complex s3 = rng.in_box(0.2, 0.8, -0.3, 0.3);
            const int m1 = 1 + d % 4;
            const auto [pm, pn] = detail::index_pairs[static_cast<std::size_t>(d % 6)];
            const int m3 = 1 + (d + 2) % 4;
            const std::string draw = "draw " + std::to_string(d);
            for (unsigned delta = 0; delta <= 1; ++delta)
            {
                const std::string label = draw + " delta=" + std::to_string(delta);
                try
                {
                    single.add(detail::rel(numeric_residue(params, {1, m1, 0, delta}, MellinPoint({0.0, s2, s3}), 0.0,
                                                           rcfg),
                                           detail::taint(residue_s1(a, m1, delta, s2, s3), o.corrupt)),
                               label + " s1 m=" + std::to_string(m1));
                    single.add(detail::rel(numeric_residue(params, {2, pm, pn, delta}, MellinPoint({s1, 0.0, s3}),
                                                           0.0, rcfg),
                                           residue_s2(a, pm, pn, delta, s1, s3)),
                               label + " s2 pair=" + std::to_string(pm) + std::to_string(pn));
                    single.add(detail::rel(numeric_residue(params, {3, m3, 0, delta}, MellinPoint({s1, s2, 0.0}), 0.0,
                                                           rcfg),
                                           residue_s3(a, m3, delta, s1, s2)),
                               label + " s3 m=" + std::to_string(m3));
                }
                catch (const Error& e)
                {
                    single.add_error(e, label);
                }
            }
            for (unsigned d1 = 0; d1 <= 1; ++d1)
            {
                for (unsigned d2 = 0; d2 <= 1; ++d2)
                {
                    const std::string label = draw + " depths=" + std::to_string(d1) + std::to_string(d2);
                    const double e1 = d1;
                    const double e2 = d2;
                    try
                    {
                        // s1 at -a1-d1, s2 at -a1-a4-d2.
                        const complex p1 = -a[0] - e1;
                        const complex p2 = -a[0] - a[3] - e2;
                        const complex x12 = detail::contour_residue(
                            a, 1, p1, [&](complex z) { return residue_s2(a, 1, 4, d2, z, s3); });
                        const complex y12 = detail::contour_residue(
                            a, 2, p2, [&](complex z) { return residue_s1(a, 1, d1, z, s3); });
                        const complex c12 = detail::taint(residue_s1s2(a, d1, d2, s3), o.corrupt);
                        dbl.add(detail::rel(x12, c12), label + " s1s2");
                        order.add(detail::rel(y12, x12), label + " s1s2");
                        // s1 at -a1-d1, s3 at a2-d3 (second depth read as d3).
                        const complex p3 = a[1] - e2;
                        const complex x13 = detail::contour_residue(
                            a, 3, p3, [&](complex z) { return residue_s1(a, 1, d1, s2, z); });
                        const complex y13 = detail::contour_residue(
                            a, 1, p1, [&](complex z) { return residue_s3(a, 2, d2, z, s2); });
                        dbl.add(detail::rel(x13, residue_s1s3(a, d1, d2, s2)), label + " s1s3");
                        order.add(detail::rel(y13, x13), label + " s1s3");
                        // s2 at -a1-a4-d2, s3 at a3-d3 (first depth read as d2).
                        const complex q2 = -a[0] - a[3] - e1;
                        const complex q3 = a[2] - e2;
                        const complex x23 = detail::contour_residue(
                            a, 3, q3, [&](complex z) { return residue_s2(a, 1, 4, d1, s1, z); });
                        const complex y23 = detail::contour_residue(
                            a, 2, q2, [&](complex z) { return residue_s3(a, 3, d2, s1, z); });
                        dbl.add(detail::rel(x23, residue_s2s3(a, d1, d2, s1)), label + " s2s3");
                        order.add(detail::rel(y23, x23), label + " s2s3");
                        for (unsigned d3 = 0; d3 <= 1; ++d3)
                        {
                            const complex c3 = a[2] - static_cast<double>(d3);
                            const complex want = residue_s1s2s3(a, d1, d2, d3);
                            const std::string tl = label + std::to_string(d3);
                            triple.add(detail::rel(detail::contour_residue(
                                                       a, 3, c3, [&](complex z) { return residue_s1s2(a, d1, d2, z); }),
                                                   want),
                                       tl);
                            const double eps = 1e-7;
                            limit.add(detail::rel(eps * residue_s1s2(a, d1, d2, c3 + eps), want), tl);
                        }
                    }
                    catch (const Error& e)
                    {
                        dbl.add_error(e, label);
                    }
                }
            }
            // Formulas stay finite at points where T has a pole but the
            // residue lost the corresponding Gamma factor.
            for (unsigned k = 0; k <= 2; ++k)
            {
                const double dk = k;
                const std::string label = draw + " k=" + std::to_string(k);
                try
                {
                    const auto am = a[static_cast<std::size_t>(m1 - 1)];
                    missing.add_exact(std::isfinite(std::abs(residue_s1(a, m1, 0, s2, am - dk))), label + " s1");
                    const auto ap = a[static_cast<std::size_t>(pm - 1)];
                    const auto aq = a[static_cast<std::size_t>(pn - 1)];
                    missing.add_exact(std::isfinite(std::abs(residue_s2(a, pm, pn, 0, s1, ap - dk))), label + " s2");
                    missing.add_exact(std::isfinite(std::abs(residue_s2(a, pm, pn, 0, s1, aq - dk))), label + " s2");
                    int others[2];
                    int w = 0;
                    for (int j = 1; j <= 4; ++j)
                    {
                        if (j != pm && j != pn)
                        {
                            others[w++] = j;
                        }
                    }
                    for (int j : others)
                    {
                        missing.add_exact(
                            std::isfinite(std::abs(residue_s2(a, pm, pn, 0, -a[static_cast<std::size_t>(j - 1)] - dk, s3))),
                            label + " s2");
                    }
                }
                catch (const Error& e)
                {
                    missing.add_error(e, label);
                }
            }
            // Relabeling: new[i] = old[sigma[i]], so old index m sits at the
            // position i with sigma[i] = m - 1.
            const auto sigma = detail::random_permutation(rng, 4);
            Spectral4 b{};
            std::array<int, 5> where{};
            for (std::size_t i = 0; i < 4; ++i)
            {
                b[i] = a[static_cast<std::size_t>(sigma[i])];
                where[static_cast<std::size_t>(sigma[i] + 1)] = static_cast<int>(i) + 1;
            }
            for (unsigned delta = 0; delta <= 2; ++delta)
            {
                const std::string label = draw + " delta=" + std::to_string(delta);
                relabel.add(detail::rel(residue_s1(b, where[m1], delta, s2, s3), residue_s1(a, m1, delta, s2, s3)),
                            label + " s1");
                relabel.add(detail::rel(residue_s2(b, where[pm], where[pn], delta, s1, s3),
                                        residue_s2(a, pm, pn, delta, s1, s3)),
                            label + " s2");
                relabel.add(detail::rel(residue_s3(b, where[m3], delta, s1, s2), residue_s3(a, m3, delta, s1, s2)),
                            label + " s3");
            }
        }
    });
}

/// Criterion 11: degrees of the polynomial factors f, g, h.
inline CheckResult check_degrees(const CheckOptions& o)
{
    return report::timed(11, "degrees", "Degree bounds of residue polynomials", 0.0, o.keep_trials,
                         [&](CheckResult& r) {
        Rng rng(sampling::substream(o.seed, 11));
        auto& bounds = r.group("observed degree within bound, depths <= 2", 0.0, true);
        auto& trivial = r.group("zero depths give a constant", 0.0, true);
        for (int d = 0; d < o.count(2); ++d)
        {
            DegreeLine line;
            line.a0 = detail::random_generic_a(rng);
            line.x0 = rng.in_box(0.2, 0.8, -0.3, 0.3);
            std::array<complex, 3> lead{};
            for (auto& x : lead)
            {
                x = rng.in_box(-0.2, 0.2, -0.1, 0.1);
            }
            line.da = {lead[0], lead[1], lead[2], -(lead[0] + lead[1] + lead[2])};
            for (ResiduePolynomial w : {ResiduePolynomial::f, ResiduePolynomial::g, ResiduePolynomial::h})
            {
                for (unsigned i = 0; i <= 2; ++i)
                {
                    for (unsigned j = 0; j <= 2; ++j)
                    {
                        const std::string label = "draw " + std::to_string(d) + " " + residue_polynomial_name(w) + "_" +
                                                  std::to_string(i) + std::to_string(j);
                        try
                        {
                            const auto cert = certify_degree(w, i, j, line);
                            const int shown = o.corrupt ? cert.degree + static_cast<int>(cert.bound) + 1 : cert.degree;
                            bounds.add_exact(shown <= static_cast<int>(cert.bound), label);
                            if (i == 0 && j == 0)
                            {
                                trivial.add_exact(cert.degree == 0, label);
                            }
                        }
                        catch (const Error& e)
                        {
                            bounds.add_error(e, label);
                        }
                    }
                }
            }
        }
    });
}

/// Acceptance criteria 1 to 11, in order.
inline std::vector<CheckResult> run_criteria(const CheckOptions& o)
{
    return {check_gamma(o),    check_gl2(o),      check_bessel(o), check_gl3(o),      check_lemma(o),  check_recurrence(o),
            check_gl4(o),      check_symmetry(o), check_pdelta(o), check_residues(o), check_degrees(o)};
}

inline json options_json(const CheckOptions& o)
{
    return {{"seed", o.seed},
            {"height", o.cfg.height},
            {"step", o.cfg.step},
            {"rel_tol", o.cfg.rel_tol},
            {"max_refinements", o.cfg.max_refinements},
            {"inner", o.cfg.inner == InnerTransform::barnes ? "barnes" : "recursive"},
            {"trials", o.trials}};
}

/// The self-test report: criteria 1 to 11, then criterion 12, which reruns
/// them and compares the serialized reports byte for byte.
inline json run_selftest(const CheckOptions& o, const std::vector<std::string>& notes = {})
{
    auto serialize = [&](const std::vector<CheckResult>& rs) {
        json arr = json::array();
        for (const auto& r : rs)
        {
            arr.push_back(r.to_json(false));
        }
        return arr.dump();
    };
    const auto first = run_criteria(o);
    const auto second = run_criteria(o);
    const bool same = serialize(first) == serialize(second);

    json criteria = json::array();
    bool all = true;
    for (const auto& r : first)
    {
        criteria.push_back(r.to_json(o.timing));
        all = all && r.pass();
    }
    CheckResult det;
    det.id = 12;
    det.key = "determinism";
    det.title = "Repeated self-test gives an identical report";
    det.group("second run matches the first byte for byte", 0.0, true).add_exact(same);
    criteria.push_back(det.to_json(false));
    all = all && det.pass();

    json out{{"suite", "selftest"}, {"options", options_json(o)}, {"criteria", std::move(criteria)}, {"pass", all}};
    if (!notes.empty())
    {
        out["notes"] = notes;
    }
    return out;
}

/// The verify suites and the criterion each one runs.
inline const std::map<std::string, std::function<CheckResult(const CheckOptions&)>>& verify_suites()
{
    static const std::map<std::string, std::function<CheckResult(const CheckOptions&)>> suites{
        {"lemma21", check_lemma},    {"theorem22", check_recurrence}, {"gl4", check_gl4},
        {"pdelta", check_pdelta},    {"symmetry", check_symmetry},
    };
    return suites;
}

} // namespace mellin::checks

#endif // MELLIN_TOOLS_CHECKS_HPP_
