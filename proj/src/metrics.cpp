#include "foodbank/metrics.hpp"

#include "foodbank/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace foodbank {

WasteBreakdown waste(std::span<const double> shipped, const Instance& instance)
{
    if (shipped.size() != instance.size())
        throw Error(ErrorCode::DimensionMismatch, "shipment vector length differs from agency count");
    WasteBreakdown wb;
    double total = 0.0;
    for (std::size_t i = 0; i < shipped.size(); ++i) {
        total += shipped[i];
        wb.agency_waste += std::max(0.0, shipped[i] - instance.agencies[i].demand);
    }
    wb.foodbank_waste = std::max(0.0, instance.supply - total);
    return wb;
}

double efficiency(const WasteBreakdown& wb, double supply)
{
    if (!(supply > 0.0)) throw Error(ErrorCode::ZeroSupply, "efficiency needs positive supply");
    const double e = (supply - (wb.agency_waste + wb.foodbank_waste)) / supply;
    return std::clamp(e, 0.0, 1.0);
}

std::string_view to_string(MeasureKind kind)
{
    switch (kind) {
    case MeasureKind::Gini: return "gini";
    case MeasureKind::CoefficientOfVariation: return "cv";
    case MeasureKind::Variance: return "variance";
    case MeasureKind::MeanAbsoluteDeviation: return "mad";
    case MeasureKind::Range: return "range";
    }
    return "unknown";
}

namespace {

double mean_of(std::span<const double> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_variance(std::span<const double> v, double mean)
{
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size());
}

} // namespace

Inequity inequity(std::span<const double> values, MeasureKind kind)
{
    if (values.empty()) throw Error(ErrorCode::EmptyVector, "inequity of an empty vector");
    const double n = static_cast<double>(values.size());
    const double mean = mean_of(values);
    Inequity out;
    // a constant vector is exactly 0, whatever the rounding in the mean
    const auto [lo, hi] = std::ranges::minmax(values);
    if (lo == hi && (mean > 0.0 || kind == MeasureKind::Variance || kind == MeasureKind::MeanAbsoluteDeviation ||
                     kind == MeasureKind::Range))
        return out;

    switch (kind) {
    case MeasureKind::Gini: {
        if (!(mean > 0.0)) {
            out.zero_mean = true;
            return out;
        }
        // sorted form: sum_i (2i - n - 1) x_(i) / (n^2 mean), i = 1..n
        std::vector<double> s(values.begin(), values.end());
        std::sort(s.begin(), s.end());
        double acc = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            acc += (2.0 * static_cast<double>(i + 1) - n - 1.0) * s[i];
        out.value = std::max(0.0, acc / (n * n * mean));
        return out;
    }
    case MeasureKind::CoefficientOfVariation:
        if (!(mean > 0.0)) {
            out.zero_mean = true;
            return out;
        }
        out.value = std::sqrt(population_variance(values, mean)) / mean;
        return out;
    case MeasureKind::Variance:
        out.value = population_variance(values, mean);
        return out;
    case MeasureKind::MeanAbsoluteDeviation: {
        double acc = 0.0;
        for (double x : values) acc += std::fabs(x - mean);
        out.value = acc / n;
        return out;
    }
    case MeasureKind::Range: {
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        out.value = *hi - *lo;
        return out;
    }
    }
    return out;
}

double gini(std::span<const double> values)
{
    return inequity(values, MeasureKind::Gini).value;
}

double equity_score(std::span<const double> fill_rates)
{
    return 1.0 - gini(fill_rates);
}

double utiloquity_score(std::span<const std::optional<double>> utilizations)
{
    std::vector<double> defined;
    for (const auto& u : utilizations)
        if (u) defined.push_back(*u);
    if (defined.empty()) throw Error(ErrorCode::EmptyVector, "no agency has positive capacity");
    return 1.0 - gini(defined);
}

double utiloquity_score(std::span<const double> utilizations)
{
    return 1.0 - gini(utilizations);
}

Standardized standardize_series(std::span<const double> values)
{
    if (values.size() < 2) throw Error(ErrorCode::TooFewPoints, "standardization needs at least 2 points");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    Standardized out;
    out.values.assign(values.size(), 0.0);
    const double span = *hi - *lo;
    if (!(span > 0.0)) {
        out.degenerate = true;
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = (values[i] - *lo) / span;
    return out;
}

PriceOfEquity price_of_equity(std::span<const FrontierSample> frontier)
{
    if (frontier.size() < 3) throw Error(ErrorCode::TooFewPoints, "price of equity needs at least 3 points");
    for (std::size_t i = 1; i < frontier.size(); ++i)
        if (frontier[i].equity < frontier[i - 1].equity)
            throw Error(ErrorCode::InvalidArgument, "frontier must be sorted by equity");

    PriceOfEquity out;
    // coalesce runs of equal equity, keeping the most efficient point
    for (const auto& p : frontier) {
        if (!out.points.empty() && std::fabs(p.equity - out.points.back().equity) < 1e-9) {
            out.points.back().efficiency = std::max(out.points.back().efficiency, p.efficiency);
            continue;
        }
        out.points.push_back(p);
    }

    const auto& pts = out.points;
    const std::size_t m = pts.size();
    if (m < 2) return out; // a single point: undefined

    auto slope = [&](std::size_t a, std::size_t b) {
        return std::fabs(-(pts[b].efficiency - pts[a].efficiency) / (pts[b].equity - pts[a].equity));
    };
    out.per_point.resize(m);
    out.per_point[0] = slope(0, 1);
    out.per_point[m - 1] = slope(m - 2, m - 1);
    for (std::size_t k = 1; k + 1 < m; ++k) out.per_point[k] = slope(k - 1, k + 1);

    if (m == 2) {
        out.summary = out.per_point[0];
    } else {
        double acc = 0.0;
        for (std::size_t k = 1; k + 1 < m; ++k) acc += out.per_point[k];
        out.summary = acc / static_cast<double>(m - 2);
    }
    return out;
}

} // namespace foodbank
