#include "hoplink/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hoplink {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Splits "<number> <suffix>" (space optional); from_chars takes the longest
// valid numeric prefix, the rest is the unit.
std::pair<double, std::string> split_unit(const std::string& s, const std::string& field) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr == s.data())
        fail("field '" + field + "': cannot parse number in '" + s + "'");
    std::string suffix(ptr, s.data() + s.size());
    while (!suffix.empty() && suffix.front() == ' ') suffix.erase(suffix.begin());
    while (!suffix.empty() && suffix.back() == ' ') suffix.pop_back();
    return {v, suffix};
}

double parse_length_m(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        auto [num, unit] = split_unit(v.get<std::string>(), field);
        if (unit == "m") return num;
        if (unit == "km") return num * 1000.0;
        fail("field '" + field + "': expected a length in 'm' or 'km', got '" +
             v.get<std::string>() + "'");
    }
    fail("field '" + field + "': expected a number (meters) or a string with a unit");
}

double parse_power_w(const json& v, const std::string& field) {
    if (!v.is_string())
        fail("field '" + field +
             "': powers require an explicit unit string ('W', 'mW' or 'dBm')");
    auto [num, unit] = split_unit(v.get<std::string>(), field);
    if (unit == "W") return num;
    if (unit == "mW") return num * 1e-3;
    if (unit == "dBm") return std::pow(10.0, (num - 30.0) / 10.0);
    fail("field '" + field + "': unknown power unit '" + unit + "' (use W, mW or dBm)");
}

double parse_ratio_linear(const json& v, const std::string& field) {
    if (!v.is_string())
        fail("field '" + field + "': ratios require an explicit unit string ('dB' or 'lin')");
    auto [num, unit] = split_unit(v.get<std::string>(), field);
    if (unit == "lin") return num;
    if (unit == "dB") return std::pow(10.0, num / 10.0);
    fail("field '" + field + "': unknown ratio unit '" + unit + "' (use dB or lin)");
}

double parse_plain(const json& v, const std::string& field) {
    if (!v.is_number()) fail("field '" + field + "': expected a plain number");
    return v.get<double>();
}

std::int64_t parse_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) fail("field '" + field + "': expected an integer");
    return v.get<std::int64_t>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!known.contains(key)) fail("unknown field '" + key + "' in " + where);
}

struct ScenarioFields {
    bool has_distance = false;
    bool has_height = false;
    bool has_hops = false;
    bool has_offset = false;
};

void apply_scenario_field(Scenario& sc, ScenarioFields& seen, const std::string& key,
                          const json& v) {
    if (key == "distance_sd" || key == "D") {
        sc.distance_sd = parse_length_m(v, "distance_sd");
        seen.has_distance = true;
    } else if (key == "uav_height" || key == "H") {
        sc.uav_height = parse_length_m(v, "uav_height");
        seen.has_height = true;
    } else if (key == "hops" || key == "N") {
        sc.hops = static_cast<int>(parse_int(v, "hops"));
        seen.has_hops = true;
    } else if (key == "uav_ground_offset" || key == "offset") {
        sc.uav_ground_offset = parse_length_m(v, "uav_ground_offset");
        seen.has_offset = true;
    } else if (key == "path_loss_terrestrial" || key == "alpha") {
        sc.path_loss_terrestrial = parse_plain(v, "path_loss_terrestrial");
    } else if (key == "path_loss_los" || key == "beta1") {
        sc.path_loss_los = parse_plain(v, "path_loss_los");
    } else if (key == "path_loss_nlos" || key == "beta2") {
        sc.path_loss_nlos = parse_plain(v, "path_loss_nlos");
    } else if (key == "env_b" || key == "B") {
        sc.env_b = parse_plain(v, "env_b");
    } else if (key == "env_c" || key == "C") {
        sc.env_c = parse_plain(v, "env_c");
    } else if (key == "excess_nlos" || key == "eta") {
        sc.excess_nlos = parse_ratio_linear(v, "excess_nlos");
    } else if (key == "noise_normalized" || key == "sigma2") {
        sc.noise_normalized = parse_power_w(v, "noise_normalized");
    } else if (key == "ref_path_loss" || key == "lambda0") {
        sc.ref_path_loss = parse_ratio_linear(v, "ref_path_loss");
    } else if (key == "codeword_length" || key == "L") {
        sc.codeword_length = static_cast<int>(parse_int(v, "codeword_length"));
    } else {
        fail("unknown field '" + key + "' in scenario");
    }
}

Mode parse_mode(const json& v) {
    if (!v.is_string()) fail("field 'mode': expected one of secrecy|covert|validate|sweep");
    const std::string s = v.get<std::string>();
    if (s == "secrecy") return Mode::secrecy;
    if (s == "covert") return Mode::covert;
    if (s == "validate") return Mode::validate;
    if (s == "sweep") return Mode::sweep;
    fail("field 'mode': unknown mode '" + s + "'");
}

SweepVariable parse_sweep_variable(const json& v) {
    if (!v.is_string()) fail("field 'sweep.variable': expected a string");
    const std::string s = v.get<std::string>();
    if (s == "zeta") return SweepVariable::zeta;
    if (s == "epsilon") return SweepVariable::epsilon;
    if (s == "height") return SweepVariable::height;
    if (s == "hops") return SweepVariable::hops;
    fail("field 'sweep.variable': expected zeta|epsilon|height|hops, got '" + s + "'");
}

} // namespace

const char* to_string(Mode m) {
    switch (m) {
        case Mode::secrecy: return "secrecy";
        case Mode::covert: return "covert";
        case Mode::validate: return "validate";
        case Mode::sweep: return "sweep";
    }
    return "?";
}

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::zeta: return "zeta";
        case SweepVariable::epsilon: return "epsilon";
        case SweepVariable::height: return "height";
        case SweepVariable::hops: return "hops";
    }
    return "?";
}

const char* to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

RunConfig parse_config(const std::string& text, const std::string& source_name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: parse error in " + source_name + " at " +
                          line_col(text, e.byte) + ": " + e.what());
    }
    if (!root.is_object()) fail("top level must be an object");

    RunConfig cfg;
    ScenarioFields seen;
    bool has_mode = false, has_power = false;

    const std::set<std::string> scenario_aliases = {
        "D", "H", "N", "offset", "alpha", "beta1", "beta2", "B", "C", "eta",
        "sigma2", "lambda0", "L"};

    for (const auto& [key, v] : root.items()) {
        if (key == "mode") {
            cfg.mode = parse_mode(v);
            has_mode = true;
        } else if (key == "scenario") {
            if (!v.is_object()) fail("field 'scenario': expected an object");
            for (const auto& [k2, v2] : v.items()) apply_scenario_field(cfg.scenario, seen, k2, v2);
        } else if (key == "constraints") {
            if (!v.is_object()) fail("field 'constraints': expected an object");
            reject_unknown(v, {"zeta", "epsilon", "power_total", "P_T"}, "constraints");
            if (v.contains("zeta")) cfg.zeta = parse_plain(v["zeta"], "zeta");
            if (v.contains("epsilon")) cfg.epsilon = parse_plain(v["epsilon"], "epsilon");
            if (v.contains("power_total")) {
                cfg.power_total = parse_power_w(v["power_total"], "power_total");
                has_power = true;
            }
            if (v.contains("P_T")) {
                cfg.power_total = parse_power_w(v["P_T"], "power_total");
                has_power = true;
            }
        } else if (key == "sweep") {
            if (!v.is_object()) fail("field 'sweep': expected an object");
            reject_unknown(v, {"variable", "min", "max", "count", "scale"}, "sweep");
            SweepSpec sp;
            if (!v.contains("variable")) fail("sweep block requires 'variable'");
            sp.variable = parse_sweep_variable(v["variable"]);
            if (!v.contains("min") || !v.contains("max") || !v.contains("count"))
                fail("sweep block requires 'min', 'max' and 'count'");
            const bool lengths = sp.variable == SweepVariable::height;
            sp.min = lengths ? parse_length_m(v["min"], "sweep.min")
                             : parse_plain(v["min"], "sweep.min");
            sp.max = lengths ? parse_length_m(v["max"], "sweep.max")
                             : parse_plain(v["max"], "sweep.max");
            sp.count = static_cast<int>(parse_int(v["count"], "sweep.count"));
            if (v.contains("scale")) {
                const std::string s = v["scale"].is_string() ? v["scale"].get<std::string>() : "";
                if (s == "log") sp.log_scale = true;
                else if (s == "linear") sp.log_scale = false;
                else fail("field 'sweep.scale': expected 'log' or 'linear'");
            }
            cfg.sweep = sp;
        } else if (key == "mc") {
            if (!v.is_object()) fail("field 'mc': expected an object");
            reject_unknown(v, {"trials", "seed"}, "mc");
            if (v.contains("trials")) cfg.mc.trials = parse_int(v["trials"], "mc.trials");
            if (v.contains("seed")) {
                if (!v["seed"].is_number_unsigned() && !v["seed"].is_number_integer())
                    fail("field 'mc.seed': expected an integer");
                cfg.mc.seed = v["seed"].get<std::uint64_t>();
            }
        } else if (key == "output") {
            if (!v.is_object()) fail("field 'output': expected an object");
            reject_unknown(v, {"path", "format"}, "output");
            if (v.contains("path")) {
                if (!v["path"].is_string()) fail("field 'output.path': expected a string");
                cfg.output.path = v["path"].get<std::string>();
            }
            if (v.contains("format")) {
                const std::string s =
                    v["format"].is_string() ? v["format"].get<std::string>() : "";
                if (s == "csv") cfg.output.format = OutputFormat::csv;
                else if (s == "json") cfg.output.format = OutputFormat::json;
                else fail("field 'output.format': expected 'csv' or 'json'");
            }
        } else if (scenario_aliases.contains(key)) {
            apply_scenario_field(cfg.scenario, seen, key, v);
        } else if (key == "zeta") {
            cfg.zeta = parse_plain(v, "zeta");
        } else if (key == "epsilon") {
            cfg.epsilon = parse_plain(v, "epsilon");
        } else if (key == "P_T" || key == "power_total") {
            cfg.power_total = parse_power_w(v, "power_total");
            has_power = true;
        } else {
            fail("unknown field '" + key + "'");
        }
    }

    if (!has_mode) fail("missing required field 'mode'");
    if (!seen.has_distance) fail("missing required field 'distance_sd' (alias 'D')");
    if (!seen.has_height) fail("missing required field 'uav_height' (alias 'H')");
    if (!has_power) fail("missing required field 'power_total' (alias 'P_T')");
    if (!seen.has_offset) cfg.scenario.uav_ground_offset = cfg.scenario.distance_sd / 2.0;

    const bool sweep_hops =
        cfg.sweep.has_value() && cfg.sweep->variable == SweepVariable::hops;
    if (!seen.has_hops) {
        if (!sweep_hops) fail("missing required field 'hops' (alias 'N')");
        cfg.scenario.hops = 1;  // placeholder; the grid supplies N
    }

    if (cfg.mode == Mode::sweep) {
        if (!cfg.sweep.has_value()) fail("mode 'sweep' requires a sweep block");
    } else if (cfg.sweep.has_value()) {
        fail("sweep block is only allowed with mode 'sweep'");
    }

    // Problem selection: exactly one of zeta/epsilon, possibly implied by the
    // swept variable.
    if (cfg.sweep.has_value() && cfg.sweep->variable == SweepVariable::zeta) {
        if (cfg.epsilon.has_value()) fail("sweep over zeta conflicts with 'epsilon'");
        if (!cfg.zeta.has_value()) cfg.zeta = cfg.sweep->min;
    } else if (cfg.sweep.has_value() && cfg.sweep->variable == SweepVariable::epsilon) {
        if (cfg.zeta.has_value()) fail("sweep over epsilon conflicts with 'zeta'");
        if (!cfg.epsilon.has_value()) cfg.epsilon = cfg.sweep->min;
    }
    if (cfg.zeta.has_value() == cfg.epsilon.has_value())
        fail("exactly one of 'zeta' (secrecy) or 'epsilon' (covert) is required");

    // Range checks.
    if (cfg.zeta && !(*cfg.zeta > 0.0 && *cfg.zeta < 1.0))
        fail("field 'zeta': must lie in (0, 1)");
    if (cfg.epsilon && !(*cfg.epsilon > 0.0 && *cfg.epsilon < 1.0))
        fail("field 'epsilon': must lie in (0, 1)");
    if (!(cfg.power_total > 0.0)) fail("field 'power_total': must be positive");
    if (cfg.mc.trials < 1) fail("field 'mc.trials': must be >= 1");
    if (cfg.sweep) {
        const auto& sp = *cfg.sweep;
        if (sp.count < 2) fail("field 'sweep.count': must be >= 2");
        if (!(sp.min < sp.max)) fail("sweep: require min < max");
        if (sp.log_scale && !(sp.min > 0.0)) fail("sweep: log scale requires min > 0");
        if ((sp.variable == SweepVariable::zeta || sp.variable == SweepVariable::epsilon) &&
            !(sp.min > 0.0 && sp.max < 1.0))
            fail("sweep: zeta/epsilon grids must lie in (0, 1)");
        if (sp.variable == SweepVariable::hops && !(sp.min >= 1.0))
            fail("sweep: hop grids must start at 1 or above");
        if (sp.variable == SweepVariable::height && !(sp.min > 0.0))
            fail("sweep: heights must be positive");
    }

    try {
        cfg.scenario.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string with_unit(double v, const char* unit) {
    return format_double(v) + " " + unit;
}

} // namespace

nlohmann::ordered_json resolved_json(const RunConfig& cfg) {
    json j;
    j["mode"] = to_string(cfg.mode);
    json sc;
    sc["distance_sd"] = with_unit(cfg.scenario.distance_sd, "m");
    sc["hops"] = cfg.scenario.hops;
    sc["uav_height"] = with_unit(cfg.scenario.uav_height, "m");
    sc["uav_ground_offset"] = with_unit(cfg.scenario.uav_ground_offset, "m");
    sc["path_loss_terrestrial"] = cfg.scenario.path_loss_terrestrial;
    sc["path_loss_los"] = cfg.scenario.path_loss_los;
    sc["path_loss_nlos"] = cfg.scenario.path_loss_nlos;
    sc["env_b"] = cfg.scenario.env_b;
    sc["env_c"] = cfg.scenario.env_c;
    sc["excess_nlos"] = with_unit(cfg.scenario.excess_nlos, "lin");
    sc["noise_normalized"] = with_unit(cfg.scenario.noise_normalized, "W");
    sc["ref_path_loss"] = with_unit(cfg.scenario.ref_path_loss, "lin");
    sc["codeword_length"] = cfg.scenario.codeword_length;
    j["scenario"] = std::move(sc);
    json cs;
    if (cfg.zeta) cs["zeta"] = *cfg.zeta;
    if (cfg.epsilon) cs["epsilon"] = *cfg.epsilon;
    cs["power_total"] = with_unit(cfg.power_total, "W");
    j["constraints"] = std::move(cs);
    if (cfg.sweep) {
        json sw;
        sw["variable"] = to_string(cfg.sweep->variable);
        sw["min"] = cfg.sweep->min;
        sw["max"] = cfg.sweep->max;
        sw["count"] = cfg.sweep->count;
        sw["scale"] = cfg.sweep->log_scale ? "log" : "linear";
        j["sweep"] = std::move(sw);
    }
    json mc;
    mc["trials"] = cfg.mc.trials;
    mc["seed"] = cfg.mc.seed;
    j["mc"] = std::move(mc);
    json out;
    out["path"] = cfg.output.path;
    out["format"] = to_string(cfg.output.format);
    j["output"] = std::move(out);
    return j;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        const double f = static_cast<double>(i) / (spec.count - 1);
        double v;
        if (spec.log_scale) {
            v = std::exp(std::log(spec.min) + f * (std::log(spec.max) - std::log(spec.min)));
        } else {
            v = spec.min + f * (spec.max - spec.min);
        }
        if (spec.variable == SweepVariable::hops) v = std::max(1.0, std::round(v));
        grid.push_back(v);
    }
    // Exact endpoints regardless of rounding in the interpolation.
    grid.front() = spec.variable == SweepVariable::hops ? std::round(spec.min) : spec.min;
    grid.back() = spec.variable == SweepVariable::hops ? std::round(spec.max) : spec.max;
    return grid;
}

std::string schema_text() {
    return R"(hoplink configuration (JSON)

Top level: an object with these fields. Blocks may be nested as shown, or the
scalar fields may be given flat at the top level using the short aliases.

  mode        required. "secrecy" | "covert" | "validate" | "sweep"
  scenario    network geometry and channel constants
  constraints problem budgets and the power cap
  sweep       grid description, required iff mode = "sweep"
  mc          Monte Carlo controls (validate mode)
  output      where and how to write results

Units. Powers and ratios always carry an explicit unit suffix in a string:
powers "30 dBm" | "1 W" | "0.5 mW"; ratios "-20 dB" | "0.01 lin". Lengths are
plain numbers in meters, or strings "300 m" | "1.2 km". Probabilities, path
loss exponents and counts are plain numbers.

scenario (alias in parentheses, default in brackets):
  distance_sd (D)             required. source-destination distance, length
  uav_height (H)              required. observer altitude, length
  hops (N)                    required unless sweeping hops. integer >= 1
  uav_ground_offset (offset)  [D/2] observer ground position along the axis
  path_loss_terrestrial (alpha)  [3.0]
  path_loss_los (beta1)       [2.5]
  path_loss_nlos (beta2)      [2.8]
  env_b (B)                   [0.136]
  env_c (C)                   [11.95]
  excess_nlos (eta)           ["-20 dB"] NLoS excess attenuation, ratio in (0,1]
  noise_normalized (sigma2)   ["-70 dBm"] noise over reference path loss, power
  ref_path_loss (lambda0)     ["-40 dB"] path loss at 1 m, ratio
  codeword_length (L)         [10] samples per hop seen by the observer

constraints:
  zeta                        secrecy-outage budget in (0,1); selects secrecy
  epsilon                     detection-error budget in (0,1); selects covert
  power_total (P_T)           required. aggregate power, power unit
  (exactly one of zeta/epsilon; a zeta/epsilon sweep implies the choice)

sweep:
  variable                    "zeta" | "epsilon" | "height" | "hops"
  min, max                    grid endpoints (height accepts length units)
  count                       integer >= 2
  scale                       ["linear"] or "log"

mc:
  trials                      [100000] integer >= 1
  seed                        [1] unsigned 64-bit

output:
  path                        [""] output file; empty writes to stdout
  format                      ["csv"] or "json"

Exit codes: 0 success, 1 configuration error, 2 infeasible constraints,
3 validate mode completed with at least one failing check.
)";
}

} // namespace hoplink
