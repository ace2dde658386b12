#ifndef HEATLAB_SCENARIOS_HPP
#define HEATLAB_SCENARIOS_HPP

// Scenario dispatch: turns a parsed config into module calls, a report.json
// document, and profile CSV / SVG side files.

#include "heatlab/config.hpp"
#include "heatlab/report.hpp"

#include <string>

namespace heatlab {

struct RunOutcome {
    json report;
    bool pass = false;
};

// Executes the configured scenario. When out_dir is nonempty, writes
// out_dir/report.json and out_dir/profiles/*.csv (creating directories).
// Module refusals propagate as exceptions with their diagnostics.
RunOutcome run_experiment(const ExperimentConfig& cfg,
                          const std::string& out_dir);

// Renders plots/<name>.svg for every profiles/<name>.csv under dir.
// Throws std::runtime_error when no profile CSVs are present.
void emit_plots(const std::string& dir);

} // namespace heatlab

#endif
