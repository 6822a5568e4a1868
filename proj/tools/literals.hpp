// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_TOOLS_LITERALS_HPP_
#define MELLIN_TOOLS_LITERALS_HPP_

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <mellin/errors.hpp>
#include <mellin/scalar.hpp>

namespace mellin::literals
{

namespace detail
{

inline std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    {
        s.remove_suffix(1);
    }
    return std::string(s);
}

inline double to_double(const std::string& text, std::string_view whole)
{
    if (text.empty() || text == "+")
    {
        return 1.0;
    }
    if (text == "-")
    {
        return -1.0;
    }
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(text, &used);
    }
    catch (const std::exception&)
    {
        used = 0;
    }
    if (used != text.size())
    {
        throw PreconditionViolation("cannot read complex literal '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace detail

/// Reads "1.5", "-0.2i", "0.3+0.4i", "1e-3-2e-2i", "i".
inline complex parse_complex(std::string_view raw)
{
    const std::string s = detail::trim(raw);
    if (s.empty())
    {
        throw PreconditionViolation("empty complex literal");
    }
    if (s.back() != 'i' && s.back() != 'j')
    {
        return {detail::to_double(s, raw), 0.0};
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
    {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
        {
            split = k;
            break;
        }
    }
    if (split == std::string::npos)
    {
        return {0.0, detail::to_double(body, raw)};
    }
    return {detail::to_double(body.substr(0, split), raw), detail::to_double(body.substr(split), raw)};
}

/// Comma-separated list of complex literals.
inline std::vector<complex> parse_list(std::string_view raw)
{
    std::vector<complex> out;
    std::size_t start = 0;
    while (start <= raw.size())
    {
        const std::size_t comma = raw.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? raw.size() : comma;
        out.push_back(parse_complex(raw.substr(start, end - start)));
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return out;
}

/// Comma-separated nonnegative integers.
inline std::vector<unsigned> parse_unsigned_list(std::string_view raw)
{
    std::vector<unsigned> out;
    std::size_t start = 0;
    while (start <= raw.size())
    {
        const std::size_t comma = raw.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? raw.size() : comma;
        const std::string item = detail::trim(raw.substr(start, end - start));
        unsigned v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
        {
            throw PreconditionViolation("expected a nonnegative integer, got '" + item + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace mellin::literals

#endif // MELLIN_TOOLS_LITERALS_HPP_
