#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tatekit/parallel.hpp"
#include "tatekit/report.hpp"

using namespace tatekit;

namespace {

void emit(const RunResult& res, const std::string& format, const std::string& output_path) {
    const std::string* payload = &res.report_text;
    if (format == "json") payload = &res.report_json;
    if (format == "csv") payload = &res.report_csv;
    if (output_path.empty()) {
        std::cout << *payload;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw error("cannot write report to " + output_path);
        out << *payload;
    }
}

void add_common(CLI::App* cmd, RunConfig& cfg, unsigned& threads) {
    cmd->add_option("--atlas", cfg.atlas_name, "atlas algebra: radford | vsl2 | truncated | cyclic");
    cmd->add_option("--file", cfg.input_file, "presentation file (JSON)");
    cmd->add_option("--N", cfg.params["N"], "atlas parameter N");
    cmd->add_option("--p", cfg.params["p"], "atlas parameter p");
    cmd->add_option("-D,--window", cfg.window, "syzygy window half-width");
    cmd->add_option("--action-bound", cfg.action_bound, "ring-degree cap for action tables");
    cmd->add_option("--seed", cfg.seed, "seed for sampled checks");
    cmd->add_option("--format", cfg.format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("-o,--output", cfg.output_path, "report file (default: stdout)");
    cmd->add_flag("--exhaustive", cfg.exhaustive, "force exhaustive verification");
    cmd->add_option("--threads", threads, "worker pool size (default: hardware, or TATEKIT_THREADS)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Tate cohomology engine for symmetric algebras over prime fields"};
    app.require_subcommand(1);
    RunConfig cfg;
    unsigned threads = 0;
    std::string bundle;

    CLI::App* cmd_build = app.add_subcommand("build", "compile a presentation and report its structure");
    add_common(cmd_build, cfg, threads);

    CLI::App* cmd_tate = app.add_subcommand("tate", "graded Tate dimensions over a window");
    add_common(cmd_tate, cfg, threads);
    cmd_tate->add_option("-M,--module", cfg.module_sel, "k | adjoint | Lxi:<j>[:<t>] | armiddle");

    CLI::App* cmd_probe = app.add_subcommand("probe", "finite-generation probes");
    add_common(cmd_probe, cfg, threads);
    cmd_probe->add_option("--check", cfg.check, "negprod | regularity | nonfg | fg");
    cmd_probe->add_option("--suite", cfg.check, "probe suite name (paper)");

    CLI::App* cmd_verify = app.add_subcommand("verify", "one-shot reproduction bundle");
    add_common(cmd_verify, cfg, threads);
    cmd_verify->add_option("bundle", bundle, "e.g. radford-2-5, vsl2-5, cyclic-5, truncated-2-5")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (threads >= 1) worker_count() = threads;
    // drop unset atlas params so builders fall back to their defaults
    for (auto it = cfg.params.begin(); it != cfg.params.end();)
        it = it->second == 0 ? cfg.params.erase(it) : std::next(it);

    try {
        RunResult res;
        if (cmd_build->parsed()) {
            cfg.command = "build";
            res = run_build(cfg);
        } else if (cmd_tate->parsed()) {
            cfg.command = "tate";
            res = run_tate(cfg);
        } else if (cmd_probe->parsed()) {
            cfg.command = "probe";
            res = run_probe(cfg);
        } else {
            cfg.command = "verify";
            res = run_verify(bundle, cfg.window, cfg.seed);
        }
        emit(res, cfg.format, cfg.output_path);
        return res.exit_code;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
