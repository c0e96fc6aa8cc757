#pragma once

#include "foodbank/frontier.hpp"
#include "foodbank/model.hpp"
#include "foodbank/scenario.hpp"
#include "foodbank/sensitivity.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace foodbank {

inline constexpr std::string_view kVersion = "1.0.0";

// Conventions in force, stamped into every output header.
inline constexpr std::string_view kConventions =
    "equity=1-gini(fill-rates); cv/variance/mad/range equity=1-minmax(series) per (model,bin); "
    "poe=mean |central difference| over interior frontier points";

struct OutputStamp {
    std::string config_hash = "none";
    std::string seed = "none";
    std::vector<std::pair<std::string, std::string>> extra;
};

std::string stamp_header(const OutputStamp& stamp);

// Shortest text that reads back to the same double.
std::string format_number(double v);

// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// id,capacity,demand with an optional ratio column; each row carries
// exactly one of capacity or ratio.
Instance parse_agency_csv(std::string_view text, double supply, std::string_view source = "<input>");
Instance read_agency_csv(const std::filesystem::path& path, double supply);

std::string format_allocation_csv(const Instance& instance, const std::vector<double>& shipped,
                                  const OutputStamp& stamp);

struct AllocationRecord {
    Instance instance;
    std::vector<double> shipped;
    double efficiency = 0.0;
    double equity = 0.0;
    double utiloquity = 0.0;
};

AllocationRecord parse_allocation_csv(std::string_view text);

std::string format_scenario_csv(const ScenarioSet& set, const ScenarioConfig& config, const OutputStamp& stamp);

struct FrontierSeries {
    ModelTag model = ModelTag::Ours;
    VariabilityBin bin = VariabilityBin::Low;
    std::vector<FrontierPoint> points;
};

std::string format_frontier_csv(const std::vector<FrontierSeries>& series, const OutputStamp& stamp);

std::string format_sensitivity_csv(const std::vector<SensitivityPoint>& points, const OutputStamp& stamp);
std::string format_sensitivity_summary(const std::vector<SensitivityPoint>& points, const OutputStamp& stamp);

// Comment lines of the form "# key=value".
std::map<std::string, std::string> header_fields(std::string_view text);

} // namespace foodbank
