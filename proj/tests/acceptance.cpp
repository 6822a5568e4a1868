// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

// Runs acceptance criteria 1 to 12 and prints one PASS/FAIL line for each.

#include <cstdio>
#include <string>

#include <checks.hpp>

int main()
{
    const auto report = mellin::checks::run_selftest(mellin::checks::CheckOptions{});
    for (const auto& c : report["criteria"])
    {
        std::printf("%s  criterion %2d: %s (%s)\n", c["pass"].get<bool>() ? "PASS" : "FAIL", c["id"].get<int>(),
                    c["title"].get<std::string>().c_str(), c["summary"].get<std::string>().c_str());
        if (!c["pass"].get<bool>())
        {
            for (const auto& g : c["groups"])
            {
                if (!g["pass"].get<bool>())
                {
                    std::printf("      failing group: %s\n", g.dump().c_str());
                }
            }
        }
    }
    const bool ok = report["pass"].get<bool>();
    std::printf("%s\n", ok ? "all acceptance criteria passed" : "acceptance FAILED");
    return ok ? 0 : 1;
}
