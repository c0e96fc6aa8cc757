#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace foodbank {

// Feasibility tolerances: fill-rates live in [0,1], pounds reach ~1e6.
inline constexpr double kFillRateTol = 1e-9;
inline constexpr double kPoundTol = 1e-6;

// Largest magnitude accepted for any pound quantity. Keeps the 1e-6 lb
// rounding grid inside int64 and cross products inside __int128.
inline constexpr double kMaxPounds = 1e10;

// Pound tolerance, widened slightly for large supplies.
inline double pound_tol(double supply) { return kPoundTol + 1e-12 * supply; }

struct Agency {
    std::string id;
    double capacity = 0.0;
    double demand = 0.0;
};

struct Instance {
    std::vector<Agency> agencies;
    double supply = 0.0;

    std::size_t size() const { return agencies.size(); }
    std::vector<double> demands() const;
    std::vector<double> capacities() const;
};

// Throws Error on the first violated invariant.
Instance validate_instance(Instance raw);

// Builds an instance from parallel vectors; ids default to a1..an.
Instance make_instance(std::span<const double> capacities, std::span<const double> demands,
                       double supply);

struct ConciseInstance {
    Instance base;
    std::vector<double> effective_demand;
    std::vector<double> max_fill_rate;
    double total_demand = 0.0;

    std::size_t size() const { return base.size(); }
    double supply() const { return base.supply; }
    double demand(std::size_t i) const { return base.agencies[i].demand; }
    double capacity(std::size_t i) const { return base.agencies[i].capacity; }
};

ConciseInstance to_concise(const Instance& instance);

struct Allocation {
    std::vector<double> shipped;
    std::vector<double> fill_rates;
    double max_fill_rate = 0.0;
    std::vector<double> deviations;
    std::vector<std::optional<double>> utilizations; // nullopt when C_i = 0
};

double objective(std::span<const double> fill_rates, double theta);
double objective(const Allocation& alloc, double theta);

Allocation allocation_from_fill_rates(std::span<const double> fill_rates,
                                      const ConciseInstance& instance);

struct Classification {
    bool utopian = false;
    bool supply_constrained = false;
};

Classification classify(const ConciseInstance& instance);

// Pounds on the 1e-6 grid. Exact comparisons go through these.
std::int64_t to_micro(double pounds);

} // namespace foodbank
