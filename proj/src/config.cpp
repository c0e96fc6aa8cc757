#include "foodbank/config.hpp"

#include "foodbank/csv.hpp"
#include "foodbank/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <set>

namespace foodbank {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg)
{
    throw Error(ErrorCode::ConfigError, msg);
}

void allow_only(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys)
{
    if (!obj.is_object()) schema(where + " must be an object");
    const std::set<std::string_view> ok(keys);
    for (const auto& [k, v] : obj.items())
        if (!ok.count(k)) schema(fmt::format("unknown key '{}{}'", where.empty() ? "" : where + ".", k));
}

const json& require(const json& obj, const std::string& where, const std::string& key)
{
    if (!obj.contains(key)) schema(fmt::format("missing key '{}{}'", where.empty() ? "" : where + ".", key));
    return obj.at(key);
}

double number(const json& v, const std::string& name)
{
    if (!v.is_number()) schema(fmt::format("'{}' must be a number", name));
    return v.get<double>();
}

std::uint64_t unsigned_int(const json& v, const std::string& name)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        schema(fmt::format("'{}' must be a non-negative integer", name));
    return v.get<std::uint64_t>();
}

template <class T>
void optional_field(const json& obj, const std::string& where, const std::string& key, T& out)
{
    if (!obj.contains(key)) return;
    const std::string name = where + "." + key;
    if constexpr (std::is_same_v<T, double>) out = number(obj.at(key), name);
    else out = static_cast<T>(unsigned_int(obj.at(key), name));
}

std::vector<double> multipliers(const json& v, const std::string& name)
{
    if (!v.is_array() || v.empty()) schema(fmt::format("'{}' must be a non-empty array", name));
    std::vector<double> out;
    for (const auto& x : v) {
        const double m = number(x, name);
        if (!(m > 0.0)) schema(fmt::format("'{}' entries must be positive", name));
        out.push_back(m);
    }
    return out;
}

} // namespace

std::string fnv1a_hex(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        schema(std::string("config is not valid JSON: ") + e.what());
    }
    allow_only(root, "", {"supply", "agencies", "scenario", "sweep", "sensitivity", "output_dir", "tolerances"});

    RunConfig cfg;
    cfg.supply = number(require(root, "", "supply"), "supply");
    if (!(cfg.supply > 0.0)) schema("'supply' must be positive");

    const auto& ag = require(root, "", "agencies");
    allow_only(ag, "agencies", {"file", "synthetic"});
    if (ag.contains("file") == ag.contains("synthetic")) schema("'agencies' needs exactly one of 'file' or 'synthetic'");
    if (ag.contains("file")) {
        if (!ag["file"].is_string()) schema("'agencies.file' must be a string");
        std::filesystem::path p = ag["file"].get<std::string>();
        cfg.agencies_file = p.is_absolute() ? p : base_dir / p;
    } else {
        const auto& syn = ag["synthetic"];
        allow_only(syn, "agencies.synthetic",
                   {"count", "seed", "ratio_min", "ratio_max", "headcount_log_sd", "median_headcount", "servings",
                    "window_position"});
        SynthesisOptions o;
        optional_field(syn, "agencies.synthetic", "count", o.agencies);
        o.seed = unsigned_int(require(syn, "agencies.synthetic", "seed"), "agencies.synthetic.seed");
        optional_field(syn, "agencies.synthetic", "ratio_min", o.ratio_min);
        optional_field(syn, "agencies.synthetic", "ratio_max", o.ratio_max);
        optional_field(syn, "agencies.synthetic", "headcount_log_sd", o.headcount_log_sd);
        optional_field(syn, "agencies.synthetic", "median_headcount", o.median_headcount);
        optional_field(syn, "agencies.synthetic", "servings", o.servings);
        optional_field(syn, "agencies.synthetic", "window_position", o.window_position);
        cfg.synthetic = o;
    }

    const auto& sc = require(root, "", "scenario");
    allow_only(sc, "scenario",
               {"seed", "count", "low_bin_ratio", "high_bin_ratio", "dispersion_slack", "demand_floor", "rng"});
    cfg.seed = unsigned_int(require(sc, "scenario", "seed"), "scenario.seed");
    optional_field(sc, "scenario", "count", cfg.count);
    optional_field(sc, "scenario", "low_bin_ratio", cfg.low_bin_ratio);
    optional_field(sc, "scenario", "high_bin_ratio", cfg.high_bin_ratio);
    optional_field(sc, "scenario", "dispersion_slack", cfg.dispersion_slack);
    optional_field(sc, "scenario", "demand_floor", cfg.demand_floor);
    if (sc.contains("rng")) {
        const std::string want = fmt::format("{}/v{}", kRngName, kRngVersion);
        if (!sc["rng"].is_string() || sc["rng"].get<std::string>() != want)
            schema(fmt::format("'scenario.rng' must be \"{}\"", want));
    }
    if (cfg.count < 1) schema("'scenario.count' must be >= 1");

    if (root.contains("sweep")) {
        const auto& sw = root["sweep"];
        allow_only(sw, "sweep", {"points"});
        optional_field(sw, "sweep", "points", cfg.points);
        if (cfg.points < 1) schema("'sweep.points' must be >= 1");
    }
    if (root.contains("sensitivity")) {
        const auto& se = root["sensitivity"];
        allow_only(se, "sensitivity", {"supply_multipliers", "capacity_multipliers"});
        if (se.contains("supply_multipliers"))
            cfg.supply_multipliers = multipliers(se["supply_multipliers"], "sensitivity.supply_multipliers");
        if (se.contains("capacity_multipliers"))
            cfg.capacity_multipliers = multipliers(se["capacity_multipliers"], "sensitivity.capacity_multipliers");
    }
    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) schema("'output_dir' must be a string");
        std::filesystem::path p = root["output_dir"].get<std::string>();
        cfg.output_dir = p.is_absolute() ? p : base_dir / p;
    } else {
        cfg.output_dir = base_dir / "out";
    }
    if (root.contains("tolerances")) {
        const auto& tl = root["tolerances"];
        allow_only(tl, "tolerances", {"dominance"});
        optional_field(tl, "tolerances", "dominance", cfg.dominance_tolerance);
    }

    // keys are sorted by the json object, so dump() is canonical
    cfg.hash = fnv1a_hex(root.dump());
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }
    return parse_config(text, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

ScenarioConfig scenario_config(const RunConfig& cfg)
{
    ScenarioConfig sc;
    if (cfg.synthetic) {
        SynthesisOptions o = *cfg.synthetic;
        o.supply = cfg.supply;
        o.count = cfg.count;
        o.scenario_seed = cfg.seed;
        sc = synthesize_config(o);
    } else {
        // nominal file: capacity or ratio per row, same format as the solver input
        const auto inst = read_agency_csv(*cfg.agencies_file, cfg.supply);
        for (const auto& a : inst.agencies) {
            sc.agency_ids.push_back(a.id);
            sc.nominal_demands.push_back(a.demand);
            sc.capacity_ratios.push_back(a.capacity / a.demand);
        }
        sc.supply = cfg.supply;
        sc.count = cfg.count;
        sc.seed = cfg.seed;
    }
    sc.low_bin_ratio = cfg.low_bin_ratio;
    sc.high_bin_ratio = cfg.high_bin_ratio;
    sc.dispersion_slack = cfg.dispersion_slack;
    sc.demand_floor = cfg.demand_floor;
    validate_config(sc);
    return sc;
}

} // namespace foodbank
