#ifndef TATEKIT_REPORT_HPP
#define TATEKIT_REPORT_HPP

#include <string>

#include "tatekit/atlas.hpp"
#include "tatekit/probes.hpp"

namespace tatekit {

constexpr const char* kEngineVersion = "0.1.0";

struct RunConfig {
    std::string command;            // build | tate | probe | verify
    std::string atlas_name;         // or empty when a file is given
    std::map<std::string, u32> params;
    std::string input_file;
    int window = -1;                // -1: per-algebra default
    int action_bound = 6;
    u64 seed = 0;
    std::string module_sel = "k";   // k | adjoint | Lxi:<j> | armiddle
    std::string check;              // probe selector or "paper" suite
    std::string format = "text";    // json | csv | text
    std::string output_path;        // empty: stdout
    bool exhaustive = false;
};

// exit codes: 0 ok/expected, 1 mismatch, 2 input error, 3 precondition,
// 4 inconclusive
struct RunResult {
    int exit_code = 0;
    std::string report_json;   // canonical machine-readable report
    std::string report_csv;    // flattened tables
    std::string report_text;   // human-readable summary
};

int default_window(const atlas::Entry& entry);

RunResult run_build(const RunConfig& cfg);
RunResult run_tate(const RunConfig& cfg);
RunResult run_probe(const RunConfig& cfg);
RunResult run_verify(const std::string& bundle_name, int window_override = -1, u64 seed = 0);

}  // namespace tatekit

#endif
