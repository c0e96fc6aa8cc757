#pragma once

#include "foodbank/closed_form.hpp"
#include "foodbank/model.hpp"

namespace foodbank {

// Which theta range a realization offers to a sweep.
//   Spectrum: [theta_L, theta_U]
//   Abundant: not supply-constrained, so the efficient end is theta = 0
//   Utopian:  one allocation is perfect on both axes
enum class PolicyKind { Spectrum, Abundant, Utopian };

struct PolicyRange {
    PolicyKind kind = PolicyKind::Spectrum;
    double low = 0.0;
    double high = 0.0;
};

PolicyRange policy_range(const SpectrumBounds& bounds);

// Model 2 at theta, with the closed forms used at and beyond the bounds.
// At theta_U and theta_L the optimal face holds both an equitable and an
// efficient vertex; this returns the one the bound is named after.
Allocation solve_policy(const ConciseInstance& instance, const SpectrumBounds& bounds, double theta);

} // namespace foodbank
