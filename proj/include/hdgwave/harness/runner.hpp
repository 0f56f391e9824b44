#pragma once

#include "hdgwave/harness/case_file.hpp"
#include "hdgwave/harness/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hdgwave::harness {

/// A solver failure inside a case run, with the refinement level and time
/// step where it happened.
class CaseFailure : public SolverError {
public:
    CaseFailure(const std::string& what, std::size_t level, int step)
        : SolverError(what), level_(level), step_(step) {}
    std::size_t level() const { return level_; }
    /// 1-based step index, 0 for the initial trace solve
    int step() const { return step_; }

private:
    std::size_t level_;
    int step_;
};

struct RunOptions {
    /// receives one structured line per event (level start/end, and every
    /// step when `step_log` is set)
    std::function<void(const std::string&)> log;
    bool step_log = false;
};

struct RunResult {
    ConvergenceReport report;
    /// series[level] holds the requested time series of that refinement
    std::vector<std::vector<TimeSeries>> series;
};

/// Runs every refinement of the case: builds the mesh and discretisation,
/// integrates from the exact initial state to the final time and measures
/// the errors against the exact solution. Deterministic for a given case.
RunResult run_case(const CaseFile& c, const RunOptions& options = {});

/// Writes `<dir>/<name>.csv` and `<dir>/<name>_<series>_<level>.csv` (level
/// counted from 0); returns the paths written.
std::vector<std::string> write_outputs(const CaseFile& c, const RunResult& result, const std::string& directory);

/// error column names produced for a physics model
std::vector<std::string> error_fields(Physics p);

}
