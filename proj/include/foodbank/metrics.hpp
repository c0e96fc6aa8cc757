#pragma once

#include "foodbank/model.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace foodbank {

struct WasteBreakdown {
    double foodbank_waste = 0.0; // S - sum(x), clipped at 0
    double agency_waste = 0.0;   // sum max(0, x_i - D_i)
};

WasteBreakdown waste(std::span<const double> shipped, const Instance& instance);

double efficiency(const WasteBreakdown& wb, double supply);

enum class MeasureKind { Gini, CoefficientOfVariation, Variance, MeanAbsoluteDeviation, Range };

std::string_view to_string(MeasureKind kind);

struct Inequity {
    double value = 0.0;
    bool zero_mean = false; // Gini/CV on an all-zero vector; value set to 0
};

Inequity inequity(std::span<const double> values, MeasureKind kind);
double gini(std::span<const double> values);

double equity_score(std::span<const double> fill_rates);
double utiloquity_score(std::span<const std::optional<double>> utilizations);
double utiloquity_score(std::span<const double> utilizations);

struct Standardized {
    std::vector<double> values;
    bool degenerate = false; // flat series, all zero
};

Standardized standardize_series(std::span<const double> values);

struct FrontierSample {
    double equity = 0.0;
    double efficiency = 0.0;
};

struct PriceOfEquity {
    std::vector<FrontierSample> points; // after coalescing
    std::vector<double> per_point;      // magnitudes, one per coalesced point
    std::optional<double> summary;      // absent when undefined
};

// Points must be sorted by equity ascending.
PriceOfEquity price_of_equity(std::span<const FrontierSample> frontier);

} // namespace foodbank
