#pragma once

#include "foodbank/benchmark.hpp"
#include "foodbank/closed_form.hpp"
#include "foodbank/metrics.hpp"
#include "foodbank/model.hpp"
#include "foodbank/policy.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace foodbank {

enum class ModelTag { Ours, Benchmark };

std::string_view to_string(ModelTag tag);

// Uniform, endpoints included; one point when theta_L = theta_U.
std::vector<double> theta_grid(const SpectrumBounds& bounds, std::size_t points = 50);

// Normalized positions t in [0, 1].
std::vector<double> unit_grid(std::size_t points);

// Raw inequity of the fill-rates under the four non-Gini measures.
inline constexpr std::array<MeasureKind, 4> kOtherMeasures = {
    MeasureKind::CoefficientOfVariation, MeasureKind::Variance, MeasureKind::MeanAbsoluteDeviation,
    MeasureKind::Range};

struct Evaluation {
    double parameter = 0.0;
    double total_fill_rate = 0.0;
    double total_deviation = 0.0;
    double efficiency = 0.0;
    double equity = 0.0;
    double utiloquity = 0.0;
    std::array<double, 4> other_inequity{};
};

Evaluation evaluate(const Instance& instance, std::span<const double> shipped, double parameter);

struct SweepOptions {
    std::size_t points = 50;
    std::size_t workers = 0;     // 0: FOODBANK_WORKERS or 1
    bool allow_trivial = false;  // else non-spectrum realizations raise BoundsNotApplicable
};

struct SweepTable {
    ModelTag model = ModelTag::Ours;
    std::vector<double> positions;
    std::vector<std::vector<Evaluation>> samples; // [realization][position]
    std::vector<PolicyKind> kinds;                // ours only
};

SweepTable sweep_samples(std::span<const Instance> instances, ModelTag model, const SweepOptions& options);

struct FrontierPoint {
    ModelTag model = ModelTag::Ours;
    std::size_t grid_position = 0;
    double position = 0.0;
    double parameter = 0.0; // mean theta or K over realizations
    double efficiency = 0.0;
    double equity = 0.0;
    double utiloquity = 0.0;
    std::array<double, 4> other_inequity{};
    std::size_t realizations = 0;
};

// Averages each grid position; drops positions whose (equity, efficiency)
// repeats an earlier kept position within 1e-9.
std::vector<FrontierPoint> summarize(const SweepTable& table, bool deduplicate = true);

std::vector<FrontierPoint> sweep(std::span<const Instance> instances, ModelTag model,
                                 const SweepOptions& options = {});

// 1 - standardized mean inequity over the series, for one non-Gini measure.
std::vector<double> standardized_equity(std::span<const FrontierPoint> series, std::size_t measure,
                                        bool* degenerate = nullptr);

std::vector<FrontierSample> to_samples(std::span<const FrontierPoint> series);

struct DominanceCheck {
    bool passed = true;
    std::size_t compared = 0;
    double worst_margin = 0.0;     // min over compared points of ours - benchmark
    double worst_equity = 0.0;
};

struct DominanceReport {
    DominanceCheck efficiency;
    DominanceCheck utiloquity;
    bool passed() const { return efficiency.passed && utiloquity.passed; }
};

// At each of our equity levels inside the benchmark's equity range, compare
// against the upper envelope of the benchmark's piecewise-linear frontier.
DominanceReport check_dominance(std::span<const FrontierPoint> ours, std::span<const FrontierPoint> benchmark,
                                double tolerance = 1e-6);

std::size_t resolve_workers(std::size_t requested);

} // namespace foodbank
