#include "hdgwave/harness/runner.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_io = 1;
constexpr int exit_config = 2;
constexpr int exit_solver = 3;

}

int main(int argc, char** argv)
{
    using namespace hdgwave::harness;

    CLI::App app{"High-order hybridised DG solver for elastodynamics and Maxwell test cases"};
    app.require_subcommand(1);

    std::string case_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    int threads = 0;
    bool verbose = false;
    CLI::App* run = app.add_subcommand("run", "run a case file and write its report and series");
    run->add_option("case", case_path, "case file")->required();
    run->add_option("--override", overrides, "section.key=value applied after the file (repeatable)");
    run->add_option("--out", out_dir, "output directory (replaces output.directory)");
    run->add_option("--threads", threads, "element threads (replaces solver.threads)")->check(CLI::PositiveNumber);
    run->add_flag("--verbose", verbose, "log every time step");

    CLI::App* keys = app.add_subcommand("keys", "list the accepted case-file keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    if (*keys) {
        for (const std::string& k : case_keys())
            std::cout << k << "\n";
        return exit_ok;
    }

    auto log = spdlog::stderr_color_mt("hdgwave");
    log->set_pattern("%Y-%m-%dT%H:%M:%S.%e level=%l %v");

    CaseFile c;
    try {
        c = load_case(case_path);
        for (const std::string& o : overrides)
            apply_override(c, o);
        if (!out_dir.empty())
            apply_override(c, "output.directory=" + out_dir);
        if (threads > 0)
            apply_override(c, "solver.threads=" + std::to_string(threads));
    } catch (const hdgwave::ConfigError& e) {
        log->error("event=config_error message=\"{}\"", e.what());
        return exit_config;
    }

    RunOptions opt;
    opt.log = [&](const std::string& line) { log->info("{}", line); };
    opt.step_log = verbose;
    try {
        const RunResult result = run_case(c, opt);
        for (const std::string& path : write_outputs(c, result, c.output_directory))
            log->info("event=write path=\"{}\"", path);
        std::cout << report_csv(result.report);
    } catch (const hdgwave::ConfigError& e) {
        log->error("event=config_error message=\"{}\"", e.what());
        return exit_config;
    } catch (const hdgwave::SolverError& e) {
        log->error("event=solver_failure message=\"{}\"", e.what());
        return exit_solver;
    } catch (const std::exception& e) {
        log->error("event=failure message=\"{}\"", e.what());
        return exit_io;
    }
    return exit_ok;
}
