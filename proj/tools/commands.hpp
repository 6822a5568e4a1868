// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MELLIN_TOOLS_COMMANDS_HPP_
#define MELLIN_TOOLS_COMMANDS_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <mellin/mellin.hpp>

#include "checks.hpp"
#include "literals.hpp"
#include "report.hpp"

namespace mellin::cli
{

using report::json;

enum ExitCode : int
{
    exit_pass = 0,
    exit_failure = 1,
    exit_usage = 2,
};

/// Everything a command needs, after flags and the config file are merged.
struct JobConfig
{
    std::string command;
    int n = 0; ///< 0 = infer from the length of s
    std::string a;
    std::string s;
    std::string delta = "0";
    int m = 1;
    std::string pair = "1,4";
    std::string kind = "s1";
    std::string mode = "closed";
    std::string suite;
    std::string route = "all";
    std::string inner = "barnes";
    int trials = 0;
    std::uint64_t seed = checks::default_seed;
    QuadratureConfig cfg;
    bool corrupt = false;
    bool timing = false;
    std::vector<std::string> notes;
};

struct Outcome
{
    json body;
    int exit_code = exit_pass;
};

namespace detail
{

inline std::vector<complex> parse_or_empty(const std::string& text)
{
    return text.empty() ? std::vector<complex>{} : literals::parse_list(text);
}

inline SpectralParams params_for(int n, const std::vector<complex>& values)
{
    if (values.size() + 1 == static_cast<std::size_t>(n))
    {
        return SpectralParams::from_leading(values);
    }
    if (values.size() == static_cast<std::size_t>(n))
    {
        return SpectralParams::from_full(values, 1e-12);
    }
    throw PreconditionViolation("--a needs n-1 values (the last is fixed by sum zero) or n values summing to zero");
}

struct Inputs
{
    int n = 0;
    SpectralParams a;
    MellinPoint s;
};

inline Inputs read_inputs(const JobConfig& job)
{
    const auto s = parse_or_empty(job.s);
    if (s.empty())
    {
        throw PreconditionViolation("--s is required");
    }
    const int n = job.n > 0 ? job.n : static_cast<int>(s.size()) + 1;
    if (s.size() + 1 != static_cast<std::size_t>(n))
    {
        throw PreconditionViolation("--s needs n-1 values");
    }
    auto a = parse_or_empty(job.a);
    if (a.empty())
    {
        a.assign(static_cast<std::size_t>(n - 1), complex(0.0, 0.0));
    }
    return {n, params_for(n, a), MellinPoint(s)};
}

inline json values_json(const std::vector<complex>& v)
{
    json out = json::array();
    for (const auto& z : v)
    {
        out.push_back(report::to_json(z));
    }
    return out;
}

inline json shift_json(const std::array<int, 3>& s)
{
    return json::array({s[0], s[1], s[2]});
}

inline json spec_json(const ResidueSpec& p, const SpectralParams& a)
{
    json j{{"variable", p.variable}, {"m", p.m}, {"delta", p.delta}, {"location", report::to_json(p.location(a))},
           {"describe", p.describe()}};
    if (p.variable == 2)
    {
        j["n"] = p.n;
    }
    return j;
}

inline json classification_json(const PoleClassification& c, const SpectralParams& a)
{
    json poles = json::array();
    for (const auto& p : c.poles)
    {
        poles.push_back(spec_json(p, a));
    }
    return {{"regular", c.regular()}, {"poles", std::move(poles)}};
}

inline ContinuationRoute route_of(const std::string& name)
{
    if (name == "all")
    {
        return ContinuationRoute::all_shifts;
    }
    if (name == "single")
    {
        return ContinuationRoute::single_variable;
    }
    throw PreconditionViolation("--route must be 'all' or 'single'");
}

inline QuadratureConfig config_of(const JobConfig& job)
{
    QuadratureConfig cfg = job.cfg;
    if (job.inner == "barnes")
    {
        cfg.inner = InnerTransform::barnes;
    }
    else if (job.inner == "recursive")
    {
        cfg.inner = InnerTransform::recursive;
    }
    else
    {
        throw PreconditionViolation("--inner must be 'barnes' or 'recursive'");
    }
    cfg.validate();
    return cfg;
}

inline checks::CheckOptions check_options(const JobConfig& job)
{
    checks::CheckOptions o;
    o.seed = job.seed;
    o.cfg = config_of(job);
    o.trials = job.trials;
    o.corrupt = job.corrupt;
    o.timing = job.timing;
    return o;
}

} // namespace detail

/// T_{n,a}(s): direct quadrature inside the convergence region, continuation
/// through the GL(4) shift relations outside it.
inline Outcome cmd_eval(const JobConfig& job)
{
    const auto in = detail::read_inputs(job);
    const auto cfg = detail::config_of(job);
    const auto start = std::chrono::steady_clock::now();
    json body{{"command", "eval"}, {"n", in.n}, {"a", detail::values_json(in.a.values())},
              {"s", detail::values_json(in.s.values())}};
    if (in.n == 4)
    {
        const auto c = classify_point(in.a, in.s);
        if (!c.regular())
        {
            PoleHit hit("target is a pole of T: " + c.poles.front().describe());
            body["error"] = {{"kind", hit.kind()}, {"message", hit.what()},
                             {"classification", detail::classification_json(c, in.a)}};
            return {body, exit_failure};
        }
    }
    json plan;
    complex value;
    double est = 0.0;
    try
    {
        const auto ev = eval_t(in.a, in.s, cfg);
        value = ev.value;
        est = ev.est_rel_error;
        plan = {{"method", in.n == 2 ? "closed_form" : "direct"}, {"order", ev.order}};
    }
    catch (const ContourError&)
    {
        if (in.n != 4)
        {
            throw;
        }
        const auto res = continue_t4(in.a, in.s, cfg, detail::route_of(job.route));
        value = res.value;
        est = res.est_rel_error;
        json steps = json::array();
        for (const auto& st : res.plan.steps)
        {
            steps.push_back({{"rule", rule_name(st.rule)}, {"at", detail::shift_json(st.at)}});
        }
        json anchors = json::array();
        for (const auto& an : res.plan.anchors)
        {
            anchors.push_back(detail::shift_json(an));
        }
        plan = {{"method", "continuation"}, {"route", job.route}, {"steps", std::move(steps)},
                {"anchors", std::move(anchors)}};
    }
    body["value"] = report::to_json(value);
    body["est_error"] = est;
    body["plan"] = std::move(plan);
    if (job.timing)
    {
        body["timing"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return {body, exit_pass};
}

/// One verify suite with every residual recorded.
inline Outcome cmd_verify(const JobConfig& job)
{
    const auto& suites = checks::verify_suites();
    const auto it = suites.find(job.suite);
    if (it == suites.end())
    {
        std::string names;
        for (const auto& [k, v] : suites)
        {
            names += (names.empty() ? "" : ", ") + k;
        }
        throw PreconditionViolation("unknown suite '" + job.suite + "'; expected one of " + names);
    }
    auto o = detail::check_options(job);
    o.keep_trials = true;
    const auto r = it->second(o);
    json body{{"command", "verify"}, {"suite", job.suite}, {"options", checks::options_json(o)},
              {"corrupt", job.corrupt}, {"result", r.to_json(job.timing)}, {"pass", r.pass()}};
    return {body, r.pass() ? exit_pass : exit_failure};
}

namespace detail
{

struct ResidueValues
{
    complex closed;
    std::optional<complex> numeric;
    std::string oracle;
};

inline unsigned depth_at(const std::vector<unsigned>& d, std::size_t i)
{
    if (i >= d.size())
    {
        throw PreconditionViolation("--delta needs one depth per pinned variable");
    }
    return d[i];
}

inline ResidueValues residue_values(const JobConfig& job, const Spectral4& a, const MellinPoint& s,
                                    const QuadratureConfig& cfg, bool numeric)
{
    const auto d = literals::parse_unsigned_list(job.delta);
    const auto params = checks::detail::params_of(a);
    const auto pair = literals::parse_unsigned_list(job.pair);
    ResidueValues out;
    const std::string& k = job.kind;
    std::size_t pinned = k == "s1s2s3" ? 3 : (k.size() == 4 ? 2 : 1);
    if (d.size() != pinned)
    {
        throw PreconditionViolation("--delta needs exactly one depth per pinned variable");
    }
    unsigned worst = 0;
    for (unsigned x : d)
    {
        worst = std::max(worst, x);
    }
    if (!is_generic(a, worst))
    {
        throw GammaPole("a is not generic: some a_j - a_k lies within 1e-6 of an integer");
    }
    auto contour = [&](int variable, complex center, auto&& f) {
        return checks::detail::contour_residue(a, variable, center, f);
    };
    if (k == "s1")
    {
        out.closed = residue_s1(a, job.m, d[0], s[1], s[2]);
        if (numeric)
        {
            out.numeric = numeric_residue(params, {1, job.m, 0, d[0]}, s, 0.0, cfg);
            out.oracle = "contour integral of continued T";
        }
    }
    else if (k == "s2")
    {
        if (pair.size() != 2)
        {
            throw PreconditionViolation("--pair needs two indices");
        }
        const int m = static_cast<int>(pair[0]);
        const int n = static_cast<int>(pair[1]);
        out.closed = residue_s2(a, m, n, d[0], s[0], s[2]);
        if (numeric)
        {
            out.numeric = numeric_residue(params, {2, std::min(m, n), std::max(m, n), d[0]}, s, 0.0, cfg);
            out.oracle = "contour integral of continued T";
        }
    }
    else if (k == "s3")
    {
        out.closed = residue_s3(a, job.m, d[0], s[0], s[1]);
        if (numeric)
        {
            out.numeric = numeric_residue(params, {3, job.m, 0, d[0]}, s, 0.0, cfg);
            out.oracle = "contour integral of continued T";
        }
    }
    else if (k == "s1s2")
    {
        out.closed = residue_s1s2(a, d[0], d[1], s[2]);
        if (numeric)
        {
            out.numeric = contour(1, -a[0] - static_cast<double>(d[0]),
                                  [&](complex z) { return residue_s2(a, 1, 4, d[1], z, s[2]); });
            out.oracle = "contour integral of the s2 residue";
        }
    }
    else if (k == "s1s3")
    {
        out.closed = residue_s1s3(a, d[0], d[1], s[1]);
        if (numeric)
        {
            out.numeric = contour(3, a[1] - static_cast<double>(d[1]),
                                  [&](complex z) { return residue_s1(a, 1, d[0], s[1], z); });
            out.oracle = "contour integral of the s1 residue";
        }
    }
    else if (k == "s2s3")
    {
        out.closed = residue_s2s3(a, d[0], d[1], s[0]);
        if (numeric)
        {
            out.numeric = contour(3, a[2] - static_cast<double>(d[1]),
                                  [&](complex z) { return residue_s2(a, 1, 4, d[0], s[0], z); });
            out.oracle = "contour integral of the s2 residue";
        }
    }
    else if (k == "s1s2s3")
    {
        out.closed = residue_s1s2s3(a, d[0], d[1], d[2]);
        if (numeric)
        {
            out.numeric = contour(3, a[2] - static_cast<double>(d[2]),
                                  [&](complex z) { return residue_s1s2(a, d[0], d[1], z); });
            out.oracle = "contour integral of the s1s2 residue";
        }
    }
    else
    {
        throw PreconditionViolation("--kind must be one of s1, s2, s3, s1s2, s1s3, s2s3, s1s2s3");
    }
    return out;
}

} // namespace detail

/// Closed-form residue, its contour oracle, or both.
inline Outcome cmd_residue(const JobConfig& job)
{
    if (job.mode != "closed" && job.mode != "numeric" && job.mode != "both")
    {
        throw PreconditionViolation("--mode must be closed, numeric or both");
    }
    JobConfig j4 = job;
    j4.n = 4;
    if (j4.s.empty())
    {
        j4.s = "0,0,0";
    }
    const auto in = detail::read_inputs(j4);
    const auto a = spectral4(in.a);
    const auto cfg = detail::config_of(job);
    const auto v = detail::residue_values(job, a, in.s, cfg, job.mode != "closed");
    json body{{"command", "residue"},
              {"kind", job.kind},
              {"delta", literals::parse_unsigned_list(job.delta)},
              {"a", detail::values_json(in.a.values())},
              {"s", detail::values_json(in.s.values())},
              {"mode", job.mode}};
    if (job.kind == "s1" || job.kind == "s3")
    {
        body["m"] = job.m;
    }
    if (job.kind == "s2")
    {
        body["pair"] = literals::parse_unsigned_list(job.pair);
    }
    if (job.mode != "numeric")
    {
        body["closed"] = report::to_json(v.closed);
    }
    if (v.numeric)
    {
        body["numeric"] = report::to_json(*v.numeric);
        body["oracle"] = v.oracle;
    }
    int code = exit_pass;
    if (job.mode == "both")
    {
        const double dev = checks::detail::rel(*v.numeric, v.closed);
        body["rel_deviation"] = dev;
        body["tolerance"] = 1e-4;
        body["pass"] = dev < 1e-4;
        code = dev < 1e-4 ? exit_pass : exit_failure;
    }
    return {body, code};
}

/// Pole classification of s against the three GL(4) families.
inline Outcome cmd_poles(const JobConfig& job)
{
    JobConfig j4 = job;
    j4.n = 4;
    const auto in = detail::read_inputs(j4);
    const auto c = classify_point(in.a, in.s);
    const auto th = interior_thresholds(in.a);
    json body{{"command", "poles"},
              {"a", detail::values_json(in.a.values())},
              {"s", detail::values_json(in.s.values())},
              {"classification", detail::classification_json(c, in.a)},
              {"interior_thresholds", th},
              {"direct_quadrature", place_contours(in.a, in.s, detail::config_of(job)).has_value()}};
    return {body, exit_pass};
}

/// Acceptance criteria 1 to 12.
inline Outcome cmd_selftest(const JobConfig& job)
{
    auto body = checks::run_selftest(detail::check_options(job), job.notes);
    const bool ok = body["pass"].get<bool>();
    body["command"] = "selftest";
    return {body, ok ? exit_pass : exit_failure};
}

/// Dispatches a command and turns every library error into a structured
/// payload: precondition problems exit 2, numeric ones exit 1.
inline Outcome run(const JobConfig& job)
{
    try
    {
        if (job.command == "eval")
        {
            return cmd_eval(job);
        }
        if (job.command == "verify")
        {
            return cmd_verify(job);
        }
        if (job.command == "residue")
        {
            return cmd_residue(job);
        }
        if (job.command == "poles")
        {
            return cmd_poles(job);
        }
        if (job.command == "selftest")
        {
            return cmd_selftest(job);
        }
        throw PreconditionViolation("unknown command '" + job.command + "'");
    }
    catch (const Error& e)
    {
        const bool usage = e.kind() == "PreconditionViolation" || e.kind() == "ConstraintViolation";
        json body{{"command", job.command}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        return {body, usage ? exit_usage : exit_failure};
    }
}

/// Plain-text rendering for terminals.
inline std::string render_text(const json& body)
{
    std::string out;
    auto complex_text = [](const json& z) {
        const double re = z[0].get<double>();
        const double im = z[1].get<double>();
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.16g %c %.16gi", re, im < 0 ? '-' : '+', std::abs(im));
        return std::string(buf);
    };
    if (body.contains("error"))
    {
        out += "error: " + body["error"]["kind"].get<std::string>() + ": " +
               body["error"]["message"].get<std::string>() + "\n";
        return out;
    }
    const std::string cmd = body.value("command", "");
    if (cmd == "selftest")
    {
        for (const auto& c : body["criteria"])
        {
            out += std::string(c["pass"].get<bool>() ? "PASS" : "FAIL") + "  criterion " +
                   std::to_string(c["id"].get<int>()) + ": " + c["title"].get<std::string>() + " (" +
                   c["summary"].get<std::string>() + ")\n";
        }
        if (body.contains("notes"))
        {
            for (const auto& n : body["notes"])
            {
                out += "note: " + n.get<std::string>() + "\n";
            }
        }
        out += std::string(body["pass"].get<bool>() ? "selftest passed" : "selftest FAILED") + "\n";
    }
    else if (cmd == "verify")
    {
        const auto& r = body["result"];
        for (const auto& g : r["groups"])
        {
            out += std::string(g["pass"].get<bool>() ? "PASS" : "FAIL") + "  " + g["name"].get<std::string>() +
                   ": " + std::to_string(g["count"].get<int>() - g["failures"].get<int>()) + "/" +
                   std::to_string(g["count"].get<int>()) + "\n";
        }
        out += std::string(body["pass"].get<bool>() ? "suite passed" : "suite FAILED") + "\n";
    }
    else if (cmd == "eval")
    {
        out += "T = " + complex_text(body["value"]) + "  (est. rel. error " +
               std::to_string(body["est_error"].get<double>()) + ", " + body["plan"]["method"].get<std::string>() +
               ")\n";
    }
    else if (cmd == "residue")
    {
        if (body.contains("closed"))
        {
            out += "closed  = " + complex_text(body["closed"]) + "\n";
        }
        if (body.contains("numeric"))
        {
            out += "numeric = " + complex_text(body["numeric"]) + "\n";
        }
        if (body.contains("rel_deviation"))
        {
            out += "relative deviation " + std::to_string(body["rel_deviation"].get<double>()) + "\n";
        }
    }
    else
    {
        out += body.dump(2) + "\n";
    }
    return out;
}

} // namespace mellin::cli

#endif // MELLIN_TOOLS_COMMANDS_HPP_
