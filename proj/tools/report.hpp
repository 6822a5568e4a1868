// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_TOOLS_REPORT_HPP_
#define MELLIN_TOOLS_REPORT_HPP_

#include <chrono>
#include <cmath>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <mellin/errors.hpp>
#include <mellin/scalar.hpp>

namespace mellin::report
{

using nlohmann::json;

inline json to_json(const complex& z)
{
    return json::array({z.real(), z.imag()});
}

/// One residual as recorded by `verify`.
struct Trial
{
    std::string label;
    double residual = 0.0;
    bool pass = false;
};

/// Residuals of one kind, all judged against the same tolerance. exact
/// groups record 0 or 1 per check.
class Group
{
public:
    Group(std::string name, double tolerance, bool exact = false)
        : name_(std::move(name)), tolerance_(tolerance), exact_(exact)
    {
    }

    void add(double residual, const std::string& label = {})
    {
        const bool ok = std::isfinite(residual) && residual <= tolerance_;
        record(std::isfinite(residual) ? residual : HUGE_VAL, ok, label);
    }

    void add_exact(bool ok, const std::string& label = {}) { record(ok ? 0.0 : 1.0, ok, label); }

    /// A check that raised instead of producing a residual.
    void add_error(const Error& e, const std::string& label)
    {
        record(HUGE_VAL, false, label);
        errors_.push_back(label + ": " + e.kind() + ": " + e.what());
    }

    void keep_trials(bool on) { keep_ = on; }

    [[nodiscard]] bool pass() const noexcept { return count_ > 0 && failures_ == 0; }
    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] std::size_t failures() const noexcept { return failures_; }
    [[nodiscard]] double worst() const noexcept { return worst_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

    [[nodiscard]] json to_json() const
    {
        json j{{"name", name_},       {"exact", exact_},       {"tolerance", exact_ ? 0.0 : tolerance_},
               {"count", count_},     {"failures", failures_}, {"worst", std::isfinite(worst_) ? json(worst_) : json("inf")},
               {"pass", pass()}};
        if (!failed_.empty())
        {
            j["failed"] = failed_;
        }
        if (!errors_.empty())
        {
            j["errors"] = errors_;
        }
        if (keep_)
        {
            json trials = json::array();
            for (const auto& t : trials_)
            {
                trials.push_back({{"label", t.label},
                                  {"residual", std::isfinite(t.residual) ? json(t.residual) : json("inf")},
                                  {"pass", t.pass}});
            }
            j["trials"] = std::move(trials);
        }
        return j;
    }

private:
    void record(double residual, bool ok, const std::string& label)
    {
        ++count_;
        worst_ = std::max(worst_, residual);
        if (!ok)
        {
            ++failures_;
            if (failed_.size() < 5 && !label.empty())
            {
                failed_.push_back(label);
            }
        }
        if (keep_)
        {
            trials_.push_back({label, residual, ok});
        }
    }

    std::string name_;
    double tolerance_;
    bool exact_;
    bool keep_ = false;
    std::size_t count_ = 0;
    std::size_t failures_ = 0;
    double worst_ = 0.0;
    std::vector<std::string> failed_;
    std::vector<std::string> errors_;
    std::vector<Trial> trials_;
};

/// Outcome of one acceptance criterion or verify suite.
struct CheckResult
{
    int id = 0;
    std::string key;
    std::string title;
    std::deque<Group> groups; ///< deque keeps references from group() valid
    std::vector<std::string> notes;
    bool keep_trials = false;
    double seconds = 0.0;
    double budget_seconds = 0.0; ///< 0 = no runtime bound
    bool over_budget = false;

    Group& group(std::string name, double tolerance, bool exact = false)
    {
        groups.emplace_back(std::move(name), tolerance, exact);
        groups.back().keep_trials(keep_trials);
        return groups.back();
    }

    [[nodiscard]] bool pass() const
    {
        if (groups.empty() || over_budget)
        {
            return false;
        }
        for (const auto& g : groups)
        {
            if (!g.pass())
            {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] std::string summary() const
    {
        std::size_t count = 0;
        std::size_t failures = 0;
        for (const auto& g : groups)
        {
            count += g.count();
            failures += g.failures();
        }
        std::string out = std::to_string(count - failures) + "/" + std::to_string(count) + " checks";
        if (over_budget)
        {
            out += ", runtime budget exceeded";
        }
        return out;
    }

    /// Timing is left out unless asked for, so reports compare byte for byte.
    [[nodiscard]] json to_json(bool with_timing = false) const
    {
        json j{{"id", id}, {"key", key}, {"title", title}, {"pass", pass()}, {"summary", summary()}};
        json gs = json::array();
        for (const auto& g : groups)
        {
            gs.push_back(g.to_json());
        }
        j["groups"] = std::move(gs);
        if (!notes.empty())
        {
            j["notes"] = notes;
        }
        if (budget_seconds > 0.0)
        {
            j["budget_seconds"] = budget_seconds;
        }
        if (with_timing)
        {
            j["seconds"] = seconds;
        }
        return j;
    }
};

/// Runs `body` on a fresh result and stamps runtime and budget.
template <typename Body>
CheckResult timed(int id, std::string key, std::string title, double budget_seconds, bool keep_trials, Body&& body)
{
    CheckResult r;
    r.keep_trials = keep_trials;
    r.id = id;
    r.key = std::move(key);
    r.title = std::move(title);
    r.budget_seconds = budget_seconds;
    const auto start = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.over_budget = budget_seconds > 0.0 && r.seconds > budget_seconds;
    return r;
}

} // namespace mellin::report

#endif // MELLIN_TOOLS_REPORT_HPP_
