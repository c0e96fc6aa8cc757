#include "foodbank/scenario.hpp"

#include "foodbank/closed_form.hpp"
#include "foodbank/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace foodbank {

namespace {

constexpr std::uint64_t kSynthHeadcountStream = 100;
constexpr std::uint64_t kSynthRatioStream = 101;

std::uint64_t bin_stream(VariabilityBin bin) { return bin == VariabilityBin::Low ? 1 : 2; }

double mean_of(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

std::string_view to_string(VariabilityBin bin)
{
    return bin == VariabilityBin::Low ? "low" : "high";
}

void validate_config(const ScenarioConfig& c)
{
    auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidArgument, m); };
    if (c.nominal_demands.empty()) fail("nominal demand vector is empty");
    if (c.capacity_ratios.size() != c.nominal_demands.size()) fail("capacity ratios and demands differ in length");
    if (!c.agency_ids.empty() && c.agency_ids.size() != c.nominal_demands.size()) fail("agency ids and demands differ in length");
    for (double d : c.nominal_demands)
        if (!(d > 0.0) || !std::isfinite(d)) fail("nominal demands must be positive");
    for (double r : c.capacity_ratios)
        if (!(r > 0.0 && r <= 1.0)) fail("capacity ratios must lie in (0, 1]");
    if (!(c.supply >= 0.0) || !std::isfinite(c.supply)) fail("supply must be >= 0");
    if (c.count < 1) fail("count must be >= 1");
    if (!(c.low_bin_ratio > 0.0) || !(c.high_bin_ratio > 0.0)) fail("bin ratios must be positive");
    if (!(c.dispersion_slack >= 0.0)) fail("dispersion slack must be >= 0");
    if (!(c.demand_floor > 0.0)) fail("demand floor must be positive");
}

double sample_truncated_normal(double mean, double sd, double lower, CounterRng& rng)
{
    if (!(sd >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sd must be >= 0");
    if (sd == 0.0) return mean;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const double v = mean + sd * rng.next_normal();
        if (v > lower) return v;
    }
    throw Error(ErrorCode::RejectionCapExceeded, "truncated normal rejected 10^4 draws");
}

double reference_sd(const std::vector<double>& nominal)
{
    const double m = mean_of(nominal);
    double acc = 0.0;
    for (double d : nominal) acc += (d - m) * (d - m);
    return std::sqrt(acc / static_cast<double>(nominal.size()));
}

double dispersion_statistic(const std::vector<double>& realized, const std::vector<double>& nominal)
{
    const std::size_t n = nominal.size();
    if (n < 2) return 0.0;
    const double dbar = mean_of(nominal);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (realized[i] - nominal[i]) * dbar / nominal[i];
    const double m = mean_of(z);
    double acc = 0.0;
    for (double v : z) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(n - 1));
}

ScenarioSet generate_bin(const ScenarioConfig& config, VariabilityBin bin)
{
    validate_config(config);
    const auto& nominal = config.nominal_demands;
    const std::size_t n = nominal.size();
    const double ratio = bin == VariabilityBin::Low ? config.low_bin_ratio : config.high_bin_ratio;
    const double sigma = reference_sd(nominal);
    const double dbar = mean_of(nominal);

    ScenarioSet set;
    set.bin = bin;
    set.seed = config.seed;
    set.reference_sd = sigma;

    const double low_cap = config.low_bin_ratio * sigma * (1.0 + config.dispersion_slack);
    const double high_floor = config.high_bin_ratio * sigma * (1.0 - config.dispersion_slack);
    const std::size_t max_draws = 100 * config.count;

    std::vector<double> v(n);
    for (std::size_t attempt = 0; attempt < max_draws && set.demands.size() < config.count; ++attempt) {
        for (std::size_t i = 0; i < n; ++i) {
            CounterRng rng(config.seed, bin_stream(bin), attempt, i);
            const double sd = ratio * sigma * nominal[i] / dbar;
            v[i] = sample_truncated_normal(nominal[i], sd, config.demand_floor, rng);
        }
        ++set.stats.generated;

        const double stat = dispersion_statistic(v, nominal);
        const bool dispersion_ok = bin == VariabilityBin::Low ? stat <= low_cap : stat >= high_floor;
        if (!dispersion_ok) {
            ++set.stats.rejected_dispersion;
            continue;
        }
        const auto cls = classify(to_concise(build_instance(v, config)));
        if (cls.utopian) {
            ++set.stats.rejected_utopian;
            continue;
        }
        if (!cls.supply_constrained) {
            ++set.stats.rejected_unconstrained;
            continue;
        }
        set.demands.push_back(v);
    }
    if (set.demands.size() < config.count)
        throw Error(ErrorCode::InsufficientAcceptance,
                    std::string(to_string(bin)) + " bin kept " + std::to_string(set.demands.size()) +
                        " of " + std::to_string(config.count) + " after " +
                        std::to_string(set.stats.generated) + " draws");
    return set;
}

Instance build_instance(const std::vector<double>& demands, const ScenarioConfig& config)
{
    Instance inst;
    inst.supply = config.supply;
    inst.agencies.reserve(demands.size());
    for (std::size_t i = 0; i < demands.size(); ++i) {
        std::string id = config.agency_ids.empty() ? "a" + std::to_string(i + 1) : config.agency_ids[i];
        inst.agencies.push_back({std::move(id), config.capacity_ratios[i] * demands[i], demands[i]});
    }
    return validate_instance(std::move(inst));
}

std::vector<Instance> build_instances(const ScenarioSet& set, const ScenarioConfig& config)
{
    std::vector<Instance> out;
    out.reserve(set.demands.size());
    for (const auto& d : set.demands) out.push_back(build_instance(d, config));
    return out;
}

double demand_from_headcount(double persons, double servings)
{
    return persons * kPoundsPerServing * servings;
}

ScenarioConfig synthesize_config(const SynthesisOptions& o)
{
    if (o.agencies < 2) throw Error(ErrorCode::InvalidArgument, "synthesis needs at least 2 agencies");
    if (!(o.ratio_min > 0.0 && o.ratio_min <= o.ratio_max && o.ratio_max <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "ratio bounds must satisfy 0 < min <= max <= 1");
    if (!(o.window_position >= 0.0 && o.window_position < 1.0))
        throw Error(ErrorCode::InvalidArgument, "window position must lie in [0, 1)");

    ScenarioConfig c;
    c.supply = o.supply;
    c.count = o.count;
    c.seed = o.scenario_seed;
    for (std::size_t i = 0; i < o.agencies; ++i) {
        CounterRng heads(o.seed, kSynthHeadcountStream, i);
        CounterRng ratios(o.seed, kSynthRatioStream, i);
        const double persons = o.median_headcount * std::exp(o.headcount_log_sd * heads.next_normal());
        c.nominal_demands.push_back(demand_from_headcount(persons, o.servings));
        c.capacity_ratios.push_back(ratios.next_uniform(o.ratio_min, o.ratio_max));
        c.agency_ids.push_back(fmt::format("agency_{:02d}", i + 1));
    }

    const double total = std::accumulate(c.nominal_demands.begin(), c.nominal_demands.end(), 0.0);
    double effective = 0.0;
    for (std::size_t i = 0; i < o.agencies; ++i) effective += c.capacity_ratios[i] * c.nominal_demands[i];
    const double beta_b = *std::min_element(c.capacity_ratios.begin(), c.capacity_ratios.end());
    const double fill = beta_b + o.window_position * (effective / total - beta_b);
    // choose total demand so that S = fill * D
    const double scale = o.supply / (fill * total);
    if (o.supply > 0.0)
        for (double& d : c.nominal_demands) d *= scale;
    return c;
}

} // namespace foodbank
