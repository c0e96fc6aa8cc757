#include "foodbank/policy.hpp"

#include "foodbank/error.hpp"
#include "foodbank/model2.hpp"

#include <algorithm>

namespace foodbank {

PolicyRange policy_range(const SpectrumBounds& bounds)
{
    PolicyRange r;
    if (bounds.classification.utopian) {
        r.kind = PolicyKind::Utopian;
        return r;
    }
    r.high = *bounds.theta_upper;
    if (bounds.classification.supply_constrained) {
        r.kind = PolicyKind::Spectrum;
        r.low = *bounds.theta_lower;
    } else {
        r.kind = PolicyKind::Abundant;
        r.low = 0.0;
    }
    return r;
}

Allocation solve_policy(const ConciseInstance& instance, const SpectrumBounds& bounds, double theta)
{
    if (!(theta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be >= 0");
    const auto& cls = bounds.classification;
    if (!cls.utopian && theta >= *bounds.theta_upper) {
        const std::vector<double> beta(instance.size(), bounds.perfect_equity.beta_eq);
        return allocation_from_fill_rates(beta, instance);
    }
    if (!cls.utopian && cls.supply_constrained && theta <= *bounds.theta_lower)
        return allocation_from_fill_rates(bounds.dominant_efficient.beta_ef, instance);
    return solve_model2(instance, theta);
}

} // namespace foodbank
