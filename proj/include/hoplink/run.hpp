#pragma once

#include "hoplink/config.hpp"
#include "hoplink/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hoplink {

struct RunOptions {
    int threads = 1;
    std::optional<std::uint64_t> seed = std::nullopt;       // overrides mc.seed
    std::optional<std::string> out_path = std::nullopt;     // overrides output.path
    std::optional<OutputFormat> format = std::nullopt;      // overrides output.format
    std::optional<std::string> emit_resolved = std::nullopt;
};

/// Tables for a single solve: the one-row result plus the per-hop table.
std::vector<Table> solve_tables(const RunConfig& cfg);

/// One row per grid point, optimized and equal-power columns side by side.
Table sweep_table(const RunConfig& cfg, int threads);

/// Closed-form versus oracle battery with pass/fail flags.
Table validate_table(const RunConfig& cfg, std::uint64_t seed, int threads);

/// Executes the config end to end and writes the output file (or stream).
/// Returns the process exit code: 0 ok, 2 infeasible constraints.
int run(const RunConfig& cfg, const RunOptions& opts, std::ostream& stdout_stream,
        std::ostream& stderr_stream);

} // namespace hoplink
