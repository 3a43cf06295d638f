#pragma once

#include "hoplink/channel.hpp"
#include "hoplink/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace hoplink {

enum class Mode { secrecy, covert, validate, sweep };
enum class SweepVariable { zeta, epsilon, height, hops };
enum class OutputFormat { csv, json };

struct SweepSpec {
    SweepVariable variable = SweepVariable::zeta;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_scale = false;
};

struct McSpec {
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
};

struct OutputSpec {
    std::string path;  // empty means stdout
    OutputFormat format = OutputFormat::csv;
};

/// A fully resolved run description: all units converted to linear internal
/// units (watts, meters, linear ratios), all defaults applied.
struct RunConfig {
    Mode mode = Mode::secrecy;
    Scenario scenario;
    std::optional<double> zeta;     // secrecy problems carry zeta,
    std::optional<double> epsilon;  // covert problems carry epsilon
    double power_total = 0.0;       // [W]
    std::optional<SweepSpec> sweep;
    McSpec mc;
    OutputSpec output;

    bool secrecy_problem() const { return zeta.has_value(); }
};

/// Parses config text (JSON with unit-suffix strings for powers and ratios).
/// Throws ConfigError with the offending field or line/column position.
RunConfig parse_config(const std::string& text, const std::string& source_name);

RunConfig load_config(const std::string& path);

/// The resolved config as JSON. Numbers round-trip bit-exactly through
/// parse_config; unit-bearing fields are emitted with explicit linear suffixes.
nlohmann::ordered_json resolved_json(const RunConfig& cfg);

/// Human-readable schema of the config format.
std::string schema_text();

/// Grid of sweep values (log or linear spacing, inclusive endpoints); hop
/// grids are rounded to integers.
std::vector<double> sweep_grid(const SweepSpec& spec);

const char* to_string(Mode m);
const char* to_string(SweepVariable v);
const char* to_string(OutputFormat f);

} // namespace hoplink
