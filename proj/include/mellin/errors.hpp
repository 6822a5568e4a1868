// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_ERRORS_HPP_
#define MELLIN_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mellin
{

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI's JSON error payloads.
class Error : public std::runtime_error
{
public:
    Error(std::string_view kind, const std::string& what)
        : std::runtime_error(what), kind_(kind)
    {}

    [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define MELLIN_DEFINE_ERROR(Name)                                            \
    class Name : public Error                                                \
    {                                                                        \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

// Argument sits on (or within tolerance of) a pole of Gamma.
MELLIN_DEFINE_ERROR(PoleError);
// A rational coefficient's denominator factor is (numerically) zero.
MELLIN_DEFINE_ERROR(DegenerateDenominator);
// No vertical contour separates the two pole families with the required margin.
MELLIN_DEFINE_ERROR(ContourError);
// Quadrature refinement budget exhausted before reaching rel_tol.
MELLIN_DEFINE_ERROR(NonConvergence);
// Continuation target is itself a pole of T_4.
MELLIN_DEFINE_ERROR(PoleHit);
// A genericity hypothesis of every admissible shift relation fails.
MELLIN_DEFINE_ERROR(HypothesisFailure);
// Residue circle would enclose a second pole.
MELLIN_DEFINE_ERROR(CircleTooLarge);
// Two pole families coincide within the matching tolerance.
MELLIN_DEFINE_ERROR(AmbiguousClassification);
// A closed-form residue hits a Gamma pole (non-generic parameters).
MELLIN_DEFINE_ERROR(GammaPole);
MELLIN_DEFINE_ERROR(ConstraintViolation);
MELLIN_DEFINE_ERROR(PreconditionViolation);
MELLIN_DEFINE_ERROR(IllConditioned);

#undef MELLIN_DEFINE_ERROR

} // namespace mellin

#endif // MELLIN_ERRORS_HPP_
