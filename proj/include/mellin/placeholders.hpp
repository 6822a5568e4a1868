// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_PLACEHOLDERS_HPP_
#define MELLIN_PLACEHOLDERS_HPP_

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "errors.hpp"
#include "gl4.hpp"
#include "scalar.hpp"

namespace mellin
{

/// Exact stand-ins for T_{4,a} on the lattice s + {0,1,2}^3: any vector in
/// the null space of the five-term recurrence taken over every ordering of a
/// and under the reversal symmetry. Relations derived from those identities
/// must then vanish identically on the field.
class PlaceholderField
{
public:
    static constexpr int side = 3;
    static constexpr int size = side * side * side;

    PlaceholderField(Gl4Point<rational> base, std::vector<rational> values)
        : base_(std::move(base)), values_(std::move(values))
    {
    }

    [[nodiscard]] const Gl4Point<rational>& base() const noexcept { return base_; }

    static int index(const std::array<int, 3>& shift)
    {
        for (int c : shift)
        {
            if (c < 0 || c >= side)
            {
                throw PreconditionViolation("placeholder shift outside the {0,1,2}^3 window");
            }
        }
        return (shift[0] * side + shift[1]) * side + shift[2];
    }

    [[nodiscard]] const rational& at(const std::array<int, 3>& shift) const
    {
        return values_[static_cast<std::size_t>(index(shift))];
    }

    /// T as a callable over shifts relative to `offset`.
    [[nodiscard]] auto view(std::array<int, 3> offset = {0, 0, 0}) const
    {
        return [this, offset](const std::array<int, 3>& shift) -> const rational& {
            return at({offset[0] + shift[0], offset[1] + shift[1], offset[2] + shift[2]});
        };
    }

private:
    Gl4Point<rational> base_;
    std::vector<rational> values_;
};

namespace detail
{

// Null space basis of a dense rational matrix by reduction to row echelon form.
inline std::vector<std::vector<rational>> null_space(std::vector<std::vector<rational>> rows, std::size_t cols)
{
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c)
    {
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                               [c](const auto& row) { return row[c] != 0; });
        if (it == rows.end())
        {
            continue;
        }
        std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r), it);
        const rational inv = rational(1) / rows[r][c];
        for (auto& x : rows[r])
        {
            x *= inv;
        }
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            if (i == r || rows[i][c] == 0)
            {
                continue;
            }
            const rational f = rows[i][c];
            for (std::size_t k = c; k < cols; ++k)
            {
                rows[i][k] -= f * rows[r][k];
            }
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<std::vector<rational>> basis;
    for (std::size_t free = 0; free < cols; ++free)
    {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end())
        {
            continue;
        }
        std::vector<rational> v(cols, rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
        {
            v[static_cast<std::size_t>(pivot_col[i])] = -rows[i][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

/// A random relation-consistent placeholder field around `base`.
inline PlaceholderField consistent_placeholders(const Gl4Point<rational>& base, std::mt19937_64& rng)
{
    std::vector<std::vector<rational>> rows;
    std::array<int, 4> perm{0, 1, 2, 3};
    do
    {
        Gl4Point<rational> permuted = base;
        for (std::size_t i = 0; i < 4; ++i)
        {
            permuted.a[i] = base.a[static_cast<std::size_t>(perm[i])];
        }
        for (int b0 = 0; b0 < 2; ++b0)
        {
            for (int b1 = 0; b1 < 2; ++b1)
            {
                for (int b2 = 0; b2 < 2; ++b2)
                {
                    const std::array<int, 3> beta{b0, b1, b2};
                    // Direct: the recurrence at s + beta.
                    std::vector<rational> row(PlaceholderField::size, rational(0));
                    for (const auto& t : relation_five_term(permuted.shifted(beta)))
                    {
                        row[static_cast<std::size_t>(PlaceholderField::index(
                            {beta[0] + t.shift[0], beta[1] + t.shift[1], beta[2] + t.shift[2]}))] += t.coefficient;
                    }
                    rows.push_back(std::move(row));
                    // Mirrored: the recurrence for (-a) at the reversed point,
                    // read back through T_a(s) = T_{-a}(s reversed).
                    std::vector<rational> mirror(PlaceholderField::size, rational(0));
                    for (const auto& t : relation_five_term(reversal(permuted.shifted(beta))))
                    {
                        mirror[static_cast<std::size_t>(PlaceholderField::index(
                            {beta[0] + t.shift[2], beta[1] + t.shift[1], beta[2] + t.shift[0]}))] += t.coefficient;
                    }
                    rows.push_back(std::move(mirror));
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const auto basis = detail::null_space(std::move(rows), PlaceholderField::size);
    if (basis.empty())
    {
        throw IllConditioned("no nonzero relation-consistent placeholder field at this base point");
    }
    std::uniform_int_distribution<int> coef(-9, 9);
    std::vector<rational> values(PlaceholderField::size, rational(0));
    bool nonzero = false;
    while (!nonzero)
    {
        for (const auto& v : basis)
        {
            const rational c = coef(rng);
            for (std::size_t i = 0; i < values.size(); ++i)
            {
                values[i] += c * v[i];
            }
        }
        nonzero = std::any_of(values.begin(), values.end(), [](const rational& x) { return x != 0; });
    }
    return PlaceholderField(base, std::move(values));
}

} // namespace mellin

#endif // MELLIN_PLACEHOLDERS_HPP_
