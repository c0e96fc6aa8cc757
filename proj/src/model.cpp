#include "foodbank/model.hpp"

#include "foodbank/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace foodbank {

std::vector<double> Instance::demands() const
{
    std::vector<double> out;
    out.reserve(agencies.size());
    for (const auto& a : agencies) out.push_back(a.demand);
    return out;
}

std::vector<double> Instance::capacities() const
{
    std::vector<double> out;
    out.reserve(agencies.size());
    for (const auto& a : agencies) out.push_back(a.capacity);
    return out;
}

namespace {

void check_finite(double v, const std::string& what)
{
    if (!std::isfinite(v) || std::fabs(v) > kMaxPounds)
        throw Error(ErrorCode::NonFiniteValue, what + " is not a finite value below 1e10");
}

} // namespace

Instance validate_instance(Instance raw)
{
    check_finite(raw.supply, "supply");
    if (raw.supply < 0.0) throw Error(ErrorCode::NegativeSupply, "supply must be >= 0");

    if (raw.agencies.empty()) throw Error(ErrorCode::InvalidArgument, "instance has no agencies");

    std::unordered_set<std::string> seen;
    for (const auto& a : raw.agencies) {
        check_finite(a.demand, "demand of " + a.id);
        check_finite(a.capacity, "capacity of " + a.id);
        if (!(a.demand > 0.0)) throw Error(ErrorCode::NonPositiveDemand, a.id);
        if (a.capacity < 0.0) throw Error(ErrorCode::NegativeCapacity, a.id);
        if (!seen.insert(a.id).second) throw Error(ErrorCode::DuplicateId, a.id);
    }
    return raw;
}

Instance make_instance(std::span<const double> capacities, std::span<const double> demands,
                       double supply)
{
    if (capacities.size() != demands.size())
        throw Error(ErrorCode::DimensionMismatch, "capacities and demands differ in length");
    Instance inst;
    inst.supply = supply;
    for (std::size_t i = 0; i < demands.size(); ++i)
        inst.agencies.push_back({"a" + std::to_string(i + 1), capacities[i], demands[i]});
    return validate_instance(std::move(inst));
}

ConciseInstance to_concise(const Instance& instance)
{
    ConciseInstance ci;
    ci.base = instance;
    const std::size_t n = instance.size();
    ci.effective_demand.resize(n);
    ci.max_fill_rate.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = instance.agencies[i];
        ci.effective_demand[i] = std::min(a.capacity, a.demand);
        ci.max_fill_rate[i] = ci.effective_demand[i] / a.demand;
        ci.total_demand += a.demand;
    }
    return ci;
}

double objective(std::span<const double> fill_rates, double theta)
{
    if (fill_rates.empty()) return 0.0;
    const double top = *std::max_element(fill_rates.begin(), fill_rates.end());
    double sum = 0.0;
    double dev = 0.0;
    for (double b : fill_rates) {
        sum += b;
        dev += top - b;
    }
    return theta == 0.0 ? sum : sum - theta * dev;
}

double objective(const Allocation& alloc, double theta)
{
    return objective(alloc.fill_rates, theta);
}

Allocation allocation_from_fill_rates(std::span<const double> fill_rates,
                                      const ConciseInstance& instance)
{
    const std::size_t n = instance.size();
    if (fill_rates.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "fill-rate vector length differs from agency count");

    Allocation alloc;
    alloc.fill_rates.assign(fill_rates.begin(), fill_rates.end());
    alloc.shipped.resize(n);
    alloc.deviations.resize(n);
    alloc.utilizations.resize(n);

    double shipped_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b = fill_rates[i];
        if (b < -kFillRateTol || b > instance.max_fill_rate[i] + kFillRateTol)
            throw Error(ErrorCode::InfeasibleFillRates,
                        "fill-rate of " + instance.base.agencies[i].id + " outside [0, cap]");
        alloc.shipped[i] = b * instance.demand(i);
        shipped_total += alloc.shipped[i];
        alloc.max_fill_rate = std::max(alloc.max_fill_rate, b);
    }
    if (shipped_total > instance.supply() + pound_tol(instance.supply()))
        throw Error(ErrorCode::InfeasibleFillRates, "allocation ships more than the supply");

    for (std::size_t i = 0; i < n; ++i) {
        alloc.deviations[i] = alloc.max_fill_rate - alloc.fill_rates[i];
        const double c = instance.capacity(i);
        if (c > 0.0) alloc.utilizations[i] = alloc.shipped[i] / c;
    }
    return alloc;
}

std::int64_t to_micro(double pounds)
{
    return std::llround(pounds * 1e6);
}

Classification classify(const ConciseInstance& instance)
{
    // Exact on the micro-pound grid: S/D <= D~_j/D_j  <=>  S*D_j <= D~_j*D.
    const std::size_t n = instance.size();
    const __int128 s = to_micro(instance.supply());
    __int128 total = 0;
    __int128 effective_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total += to_micro(instance.demand(i));
        effective_total += to_micro(instance.effective_demand[i]);
    }

    Classification c;
    c.utopian = true;
    for (std::size_t i = 0; i < n; ++i) {
        const __int128 d = to_micro(instance.demand(i));
        const __int128 e = to_micro(instance.effective_demand[i]);
        if (s * d > e * total) {
            c.utopian = false;
            break;
        }
    }
    c.supply_constrained = s < effective_total;
    return c;
}

} // namespace foodbank
