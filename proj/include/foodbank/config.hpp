#pragma once

#include "foodbank/scenario.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foodbank {

// JSON run configuration. Required keys: supply, agencies, scenario.seed.
//   agencies: {"file": "nominal.csv"}  or  {"synthetic": {...}}
struct RunConfig {
    double supply = 0.0;
    std::optional<std::filesystem::path> agencies_file;
    std::optional<SynthesisOptions> synthetic;

    std::uint64_t seed = 0;
    std::size_t count = 1000;
    double low_bin_ratio = 0.2;
    double high_bin_ratio = 2.8;
    double dispersion_slack = 0.05;
    double demand_floor = 1.0;

    std::size_t points = 50;
    std::filesystem::path output_dir = "out";
    std::vector<double> supply_multipliers = {0.5, 0.75, 1.0, 1.5, 2.0};
    std::vector<double> capacity_multipliers = {0.5, 0.75, 1.0, 1.25, 1.5, 2.0};
    double dominance_tolerance = 1e-6;

    std::string hash; // of the canonical config text
};

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

// Nominal demands and ratios from the file or the synthesis block.
ScenarioConfig scenario_config(const RunConfig& config);

std::string fnv1a_hex(std::string_view text);

} // namespace foodbank
