// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_TOOLS_SAMPLING_HPP_
#define MELLIN_TOOLS_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include <mellin/scalar.hpp>

namespace mellin::sampling
{

/// Seeded draws that do not depend on the standard library's distribution
/// implementations, so reports match across toolchains.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi)
    {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(engine_() % span);
    }

    complex in_box(double re_lo, double re_hi, double im_lo, double im_hi)
    {
        const double re = uniform(re_lo, re_hi);
        return {re, uniform(im_lo, im_hi)};
    }

    /// p/q with |p| <= numer and 1 <= q <= denom.
    rational ratio(long numer = 40, long denom = 9)
    {
        const long p = integer(-numer, numer);
        return rational(p) / rational(integer(1, denom));
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Independent stream for a named sub-check, so running one check alone
/// reproduces the draws it gets inside the full suite.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t tag)
{
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (tag + 1));
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace mellin::sampling

#endif // MELLIN_TOOLS_SAMPLING_HPP_
