#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "finnet/cli/report.hpp"
#include "finnet/cli/scenario.hpp"

namespace finnet::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitMismatch = 1,    // fixtures: some check failed
    kExitInvalid = 2,     // validation failure or malformed input
    kExitSolver = 3,      // solver failure
};

const std::vector<std::string>& command_names();

struct RunRequest {
    std::string command;
    std::string scenario_path;  // unused by "fixtures"
    std::string out_dir = ".";
    Options overrides;          // from command-line flags
};

struct RunOutcome {
    int exit_code = kExitOk;
    ReportBundle report;
    std::vector<std::string> files;  // written paths
};

struct Execution {
    ReportBundle report;
    /// CSV exports: file stem and states.
    std::vector<std::pair<std::string, std::vector<Vector>>> trajectories;
    int exit_code = kExitOk;  // nonzero when a partial result was produced
};

/// Runs one command against an already parsed scenario without touching
/// the file system. Throws on failure (see run for the exit-code mapping).
Execution execute(const std::string& command, const Scenario& scenario);

/// Loads the scenario, runs the command, writes <out>/<command>.json plus a
/// CSV per exported trajectory. Diagnostics go to err.
RunOutcome run(const RunRequest& req, std::ostream& err);

}  // namespace finnet::cli
