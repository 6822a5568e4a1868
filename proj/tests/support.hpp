// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_TESTS_SUPPORT_HPP_
#define MELLIN_TESTS_SUPPORT_HPP_

#include <cmath>

#include <gtest/gtest.h>

#include <mellin/mellin.hpp>
#include <sampling.hpp>

namespace mellin::testing
{

inline double rel_err(complex x, complex ref)
{
    return std::abs(x - ref) / std::abs(ref);
}

#define EXPECT_REL(x, ref, tol) EXPECT_LT(::mellin::testing::rel_err((x), (ref)), (tol)) << "value " << (x)

} // namespace mellin::testing

#endif // MELLIN_TESTS_SUPPORT_HPP_
