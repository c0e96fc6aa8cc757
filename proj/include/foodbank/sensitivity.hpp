#pragma once

#include "foodbank/frontier.hpp"
#include "foodbank/scenario.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace foodbank {

enum class SweptQuantity { Supply, Capacity };

std::string_view to_string(SweptQuantity q);

struct SensitivityPoint {
    SweptQuantity quantity = SweptQuantity::Supply;
    double multiplier = 1.0;
    VariabilityBin bin = VariabilityBin::Low;
    std::optional<double> poe; // absent: frontier collapsed, point flagged
    std::size_t realizations = 0;
    std::size_t utopian = 0;
    std::size_t abundant = 0; // non-utopian but not supply-constrained
    std::vector<FrontierPoint> frontier;

    bool flagged() const { return !poe.has_value(); }
};

// Realizations of one bin with supply or capacity scaled by the multiplier.
std::vector<Instance> scaled_instances(const ScenarioSet& set, const ScenarioConfig& config,
                                       SweptQuantity quantity, double multiplier);

std::vector<SensitivityPoint> sensitivity(const ScenarioConfig& config, std::span<const ScenarioSet> sets,
                                          SweptQuantity quantity, std::span<const double> multipliers,
                                          const SweepOptions& options = {});

std::vector<SensitivityPoint> sensitivity_supply(const ScenarioConfig& config, std::span<const double> multipliers,
                                                 std::span<const VariabilityBin> bins,
                                                 const SweepOptions& options = {});

std::vector<SensitivityPoint> sensitivity_capacity(const ScenarioConfig& config, std::span<const double> multipliers,
                                                   std::span<const VariabilityBin> bins,
                                                   const SweepOptions& options = {});

} // namespace foodbank
