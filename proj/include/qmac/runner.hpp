#pragma once

#include <string>

#include "qmac/config.hpp"

namespace qmac {

struct RunResult {
    std::vector<std::string> files_written;
};

/// Executes every task in the config and writes the artifacts into
/// `config.out_dir` (regions.csv, vertices2d.csv / vertices3d.csv +
/// faces3d.csv, sweep.csv, manifest.json and optional SVG plots).
RunResult run_tasks(const RunConfig& config);

}  // namespace qmac
