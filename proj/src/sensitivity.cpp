#include "foodbank/sensitivity.hpp"

#include "foodbank/error.hpp"

#include <string>

namespace foodbank {

std::string_view to_string(SweptQuantity q)
{
    return q == SweptQuantity::Supply ? "supply" : "capacity";
}

std::vector<Instance> scaled_instances(const ScenarioSet& set, const ScenarioConfig& config,
                                       SweptQuantity quantity, double multiplier)
{
    if (!(multiplier > 0.0)) throw Error(ErrorCode::InvalidArgument, "multipliers must be positive");
    std::vector<Instance> out;
    out.reserve(set.demands.size());
    for (const auto& demands : set.demands) {
        Instance inst = build_instance(demands, config);
        if (quantity == SweptQuantity::Supply) {
            inst.supply *= multiplier;
        } else {
            // capacity may now exceed demand; Definition 1 caps it in to_concise
            for (auto& a : inst.agencies) a.capacity *= multiplier;
        }
        out.push_back(validate_instance(std::move(inst)));
    }
    return out;
}

std::vector<SensitivityPoint> sensitivity(const ScenarioConfig& config, std::span<const ScenarioSet> sets,
                                          SweptQuantity quantity, std::span<const double> multipliers,
                                          const SweepOptions& options)
{
    SweepOptions opts = options;
    opts.allow_trivial = true;

    std::vector<SensitivityPoint> out;
    for (const auto& set : sets) {
        for (double m : multipliers) {
            SensitivityPoint sp;
            sp.quantity = quantity;
            sp.multiplier = m;
            sp.bin = set.bin;
            const auto instances = scaled_instances(set, config, quantity, m);
            const auto table = sweep_samples(instances, ModelTag::Ours, opts);
            sp.realizations = instances.size();
            for (auto kind : table.kinds) {
                if (kind == PolicyKind::Utopian) ++sp.utopian;
                if (kind == PolicyKind::Abundant) ++sp.abundant;
            }
            sp.frontier = summarize(table);
            const auto samples = to_samples(sp.frontier);
            if (samples.size() >= 3) sp.poe = price_of_equity(samples).summary;
            out.push_back(std::move(sp));
        }
    }
    return out;
}

namespace {

std::vector<ScenarioSet> generate_sets(const ScenarioConfig& config, std::span<const VariabilityBin> bins)
{
    std::vector<ScenarioSet> sets;
    for (auto bin : bins) sets.push_back(generate_bin(config, bin));
    return sets;
}

} // namespace

std::vector<SensitivityPoint> sensitivity_supply(const ScenarioConfig& config, std::span<const double> multipliers,
                                                 std::span<const VariabilityBin> bins, const SweepOptions& options)
{
    const auto sets = generate_sets(config, bins);
    return sensitivity(config, sets, SweptQuantity::Supply, multipliers, options);
}

std::vector<SensitivityPoint> sensitivity_capacity(const ScenarioConfig& config, std::span<const double> multipliers,
                                                   std::span<const VariabilityBin> bins, const SweepOptions& options)
{
    const auto sets = generate_sets(config, bins);
    return sensitivity(config, sets, SweptQuantity::Capacity, multipliers, options);
}

} // namespace foodbank
