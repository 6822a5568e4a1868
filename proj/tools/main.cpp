// Copyright 2026 The mellin Authors
// SPDX-License-Identifier: Apache-2.0

// mellin: command-line front end for the Whittaker-Mellin library.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace
{

// Drops "--config PATH" (or "--config=PATH") from argv when PATH does not
// exist, so the run falls back to defaults and says so.
std::vector<std::string> strip_missing_config(int argc, char** argv, std::vector<std::string>& notes)
{
    std::vector<std::string> args(argv, argv + argc);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        std::string path;
        std::size_t consumed = 0;
        if (args[i] == "--config" && i + 1 < args.size())
        {
            path = args[i + 1];
            consumed = 1;
        }
        else if (args[i].rfind("--config=", 0) == 0)
        {
            path = args[i].substr(9);
        }
        else
        {
            out.push_back(args[i]);
            continue;
        }
        if (std::filesystem::exists(path))
        {
            out.push_back("--config");
            out.push_back(path);
        }
        else
        {
            notes.push_back("config file '" + path + "' not found; defaults used");
        }
        i += consumed;
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    using mellin::cli::JobConfig;
    JobConfig job;
    bool as_json = false;
    std::string out_path;

    CLI::App app{"Mellin transforms of GL(n,R) Whittaker functions, n <= 4"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file of option defaults; command-line flags take precedence");

    app.add_option("--n", job.n, "dimension n (2, 3 or 4); default: length of --s plus one");
    app.add_option("--a", job.a, "spectral parameters, comma-separated re+imi literals (n-1 values, or n summing to 0)");
    app.add_option("--s", job.s, "Mellin point, comma-separated re+imi literals");
    app.add_option("--delta", job.delta, "residue depths, one per pinned variable, comma-separated");
    app.add_option("--m", job.m, "index m of a single s1 or s3 residue (1..4)");
    app.add_option("--pair", job.pair, "index pair m,n of an s2 residue");
    app.add_option("--kind", job.kind, "residue: s1, s2, s3, s1s2, s1s3, s2s3, s1s2s3");
    app.add_option("--mode", job.mode, "residue mode: closed, numeric, both");
    app.add_option("--height", job.cfg.height, "truncation height H of each vertical line");
    app.add_option("--step", job.cfg.step, "trapezoid step h");
    app.add_option("--rtol", job.cfg.rel_tol, "target relative error of the quadrature");
    app.add_option("--refinements", job.cfg.max_refinements, "maximum number of step halvings");
    app.add_option("--inner", job.inner, "GL(4) inner transform: barnes or recursive");
    app.add_option("--route", job.route, "continuation route: all or single");
    app.add_option("--seed", job.seed, "seed of the random samples in verify and selftest");
    app.add_option("--trials", job.trials, "sample count override for verify and selftest");
    app.add_option("--threads", job.cfg.threads, "cap on worker threads (0 = all cores)");
    app.add_flag("--json", as_json, "machine-readable JSON output");
    app.add_option("--out", out_path, "write the output to PATH instead of stdout");
    app.add_flag("--timing", job.timing, "include wall-clock timings (output is then not reproducible)");

    app.add_subcommand("eval", "evaluate T_{n,a}(s), continuing analytically when needed");
    auto* verify = app.add_subcommand("verify", "run one invariant suite and report every residual");
    verify->add_option("suite", job.suite, "lemma21, theorem22, gl4, pdelta or symmetry")->required();
    verify->add_flag("--corrupt", job.corrupt, "negative control: perturb one coefficient per trial");
    app.add_subcommand("residue", "residues of T_4 in closed form and by contour integration");
    app.add_subcommand("poles", "classify s against the pole families of T_4");
    app.add_subcommand("selftest", "run the acceptance suite");

    std::vector<std::string> notes;
    auto args = strip_missing_config(argc, argv, notes);
    std::vector<const char*> cargs;
    for (const auto& a : args)
    {
        cargs.push_back(a.c_str());
    }
    try
    {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return mellin::cli::exit_usage;
    }
    job.command = app.get_subcommands().front()->get_name();
    job.notes = notes;

    auto outcome = mellin::cli::run(job);
    if (!notes.empty() && !outcome.body.contains("notes"))
    {
        outcome.body["notes"] = notes;
    }
    const std::string text = as_json ? outcome.body.dump(2) + "\n" : mellin::cli::render_text(outcome.body);
    if (!out_path.empty())
    {
        std::ofstream file(out_path);
        if (!file)
        {
            std::cerr << "cannot write " << out_path << "\n";
            return mellin::cli::exit_usage;
        }
        file << text;
    }
    else if (outcome.body.contains("error") && !as_json)
    {
        std::cerr << text;
    }
    else
    {
        std::cout << text;
    }
    return outcome.exit_code;
}
