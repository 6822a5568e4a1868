// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_PARAMS_HPP_
#define MELLIN_PARAMS_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace mellin
{

/// The spectral parameter a = (a_1, ..., a_n) with a_1 + ... + a_n = 0.
/// Storage is 0-based: params[0] is a_1.
class SpectralParams
{
public:
    SpectralParams() = default;

    /// Builds a from a_1..a_{n-1}; a_n is set to minus their sum.
    static SpectralParams from_leading(std::vector<complex> leading)
    {
        if (leading.empty())
        {
            throw PreconditionViolation("spectral parameter needs n >= 2");
        }
        complex sum{0.0, 0.0};
        for (const auto& v : leading)
        {
            sum += v;
        }
        leading.push_back(-sum);
        return SpectralParams(std::move(leading));
    }

    /// Builds a from all n entries, which must already sum to zero.
    static SpectralParams from_full(std::vector<complex> all, double tol = 1e-12)
    {
        if (all.size() < 2)
        {
            throw PreconditionViolation("spectral parameter needs n >= 2");
        }
        complex sum{0.0, 0.0};
        double scale = 1.0;
        for (const auto& v : all)
        {
            sum += v;
            scale = std::max(scale, std::abs(v));
        }
        if (std::abs(sum) > tol * scale)
        {
            throw PreconditionViolation("spectral parameter entries must sum to zero");
        }
        all.back() -= sum;
        return SpectralParams(std::move(all));
    }

    [[nodiscard]] int n() const noexcept { return static_cast<int>(a_.size()); }
    [[nodiscard]] const std::vector<complex>& values() const noexcept { return a_; }
    const complex& operator[](std::size_t i) const { return a_[i]; }

    /// Entry i of the result is entry perm[i] of this.
    [[nodiscard]] SpectralParams permuted(std::span<const int> perm) const
    {
        if (perm.size() != a_.size())
        {
            throw PreconditionViolation("permutation length mismatch");
        }
        std::vector<complex> out;
        for (int p : perm)
        {
            out.push_back(a_.at(static_cast<std::size_t>(p)));
        }
        return SpectralParams(std::move(out));
    }

    [[nodiscard]] SpectralParams negated() const
    {
        std::vector<complex> out(a_);
        for (auto& v : out)
        {
            v = -v;
        }
        return SpectralParams(std::move(out));
    }

    /// b_j = a_{j+1} + a_1/(n-1), j = 1..n-1: the parameter of the inner
    /// GL(n-1) transform. Sums to zero.
    [[nodiscard]] SpectralParams shifted() const
    {
        if (n() < 3)
        {
            throw PreconditionViolation("shifted parameter needs n >= 3");
        }
        const complex offset = a_[0] / static_cast<double>(n() - 1);
        std::vector<complex> b;
        for (std::size_t j = 1; j < a_.size(); ++j)
        {
            b.push_back(a_[j] + offset);
        }
        return SpectralParams(std::move(b));
    }

private:
    explicit SpectralParams(std::vector<complex> a) : a_(std::move(a)) {}

    std::vector<complex> a_;
};

/// s = (s_1, ..., s_{n-1}). 0-based storage.
class MellinPoint
{
public:
    MellinPoint() = default;
    explicit MellinPoint(std::vector<complex> s) : s_(std::move(s))
    {
        if (s_.empty())
        {
            throw PreconditionViolation("Mellin point needs at least one coordinate");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return s_.size(); }
    [[nodiscard]] const std::vector<complex>& values() const noexcept { return s_; }
    const complex& operator[](std::size_t i) const { return s_[i]; }

    [[nodiscard]] MellinPoint reversed() const
    {
        std::vector<complex> out(s_.rbegin(), s_.rend());
        return MellinPoint(std::move(out));
    }

    [[nodiscard]] MellinPoint shifted(std::span<const int> by) const
    {
        if (by.size() != s_.size())
        {
            throw PreconditionViolation("shift length mismatch");
        }
        std::vector<complex> out(s_);
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            out[i] += static_cast<double>(by[i]);
        }
        return MellinPoint(std::move(out));
    }

private:
    std::vector<complex> s_;
};

inline void check_dimension(const SpectralParams& a, const MellinPoint& s)
{
    if (s.size() + 1 != static_cast<std::size_t>(a.n()))
    {
        throw PreconditionViolation("Mellin point must have n-1 coordinates");
    }
}

} // namespace mellin

#endif // MELLIN_PARAMS_HPP_
