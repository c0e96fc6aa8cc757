#pragma once

#include "foodbank/model.hpp"
#include "foodbank/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace foodbank {

enum class VariabilityBin { Low, High };

std::string_view to_string(VariabilityBin bin);

struct ScenarioConfig {
    std::vector<std::string> agency_ids; // empty: a1..an
    std::vector<double> nominal_demands;
    std::vector<double> capacity_ratios; // C_i / D_i in (0, 1]
    double supply = 0.0;
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    double low_bin_ratio = 0.2;
    double high_bin_ratio = 2.8;
    double dispersion_slack = 0.05;
    double demand_floor = 1.0;
};

void validate_config(const ScenarioConfig& config);

struct AcceptanceStats {
    std::size_t generated = 0;
    std::size_t rejected_dispersion = 0;
    std::size_t rejected_utopian = 0;
    std::size_t rejected_unconstrained = 0;
};

struct ScenarioSet {
    VariabilityBin bin = VariabilityBin::Low;
    std::vector<std::vector<double>> demands;
    std::uint64_t seed = 0;
    double reference_sd = 0.0; // across-agency sd of the nominal vector
    AcceptanceStats stats;
};

// Normal(mean, sd) conditioned on value > lower, by rejection (10^4 tries).
double sample_truncated_normal(double mean, double sd, double lower, CounterRng& rng);

// Population sd of the nominal vector.
double reference_sd(const std::vector<double>& nominal);

// Sample sd across agencies of (v_i - D_i) * mean(D) / D_i; estimates
// r * reference_sd for a draw made with bin ratio r.
double dispersion_statistic(const std::vector<double>& realized, const std::vector<double>& nominal);

ScenarioSet generate_bin(const ScenarioConfig& config, VariabilityBin bin);

Instance build_instance(const std::vector<double>& demands, const ScenarioConfig& config);
std::vector<Instance> build_instances(const ScenarioSet& set, const ScenarioConfig& config);

inline constexpr double kPoundsPerServing = 1.2;

double demand_from_headcount(double persons, double servings = 1.0);

// Synthetic nominal data: lognormal headcounts, uniform capacity ratios,
// demand scaled so the supply sits window_position of the way between the
// perfect-equity supply and total effective demand.
struct SynthesisOptions {
    std::size_t agencies = 34;
    double supply = 2838584.0;
    std::uint64_t seed = 1;
    double ratio_min = 0.3;
    double ratio_max = 0.9;
    double headcount_log_sd = 0.15;
    double median_headcount = 1000.0;
    double servings = 30.0;
    double window_position = 0.5;
    std::size_t count = 100;
    std::uint64_t scenario_seed = 2;
};

ScenarioConfig synthesize_config(const SynthesisOptions& options);

} // namespace foodbank
