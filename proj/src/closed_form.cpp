#include "foodbank/closed_form.hpp"

#include "foodbank/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace foodbank {

namespace {

using i128 = __int128;

Fraction reduce(i128 num, i128 den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
    if (num > lim || -num > lim || den > lim)
        throw Error(ErrorCode::NumericalFailure, "exact bound does not fit in 64 bits");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

} // namespace

PerfectEquity perfect_equity(const ConciseInstance& instance)
{
    const std::size_t n = instance.size();
    PerfectEquity pe;
    pe.beta_a = instance.supply() / instance.total_demand;

    // argmin of D~_j / D_j, compared exactly by cross-multiplication
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j) {
        const i128 lhs = static_cast<i128>(to_micro(instance.effective_demand[j])) * to_micro(instance.demand(best));
        const i128 rhs = static_cast<i128>(to_micro(instance.effective_demand[best])) * to_micro(instance.demand(j));
        if (lhs < rhs) best = j;
    }
    const i128 eb = to_micro(instance.effective_demand[best]);
    const i128 db = to_micro(instance.demand(best));
    for (std::size_t j = 0; j < n; ++j) {
        const i128 lhs = static_cast<i128>(to_micro(instance.effective_demand[j])) * db;
        const i128 rhs = eb * to_micro(instance.demand(j));
        if (lhs == rhs) pe.binding_min_set.push_back(j);
    }
    pe.beta_b = instance.max_fill_rate[best];

    pe.utopian = classify(instance).utopian;
    if (pe.utopian) {
        pe.beta_eq = pe.beta_a;
    } else {
        pe.beta_eq = pe.beta_b;
        pe.m_upper = n - pe.binding_min_set.size();
    }
    return pe;
}

Fraction theta_upper_exact(const PerfectEquity& pe, std::size_t n)
{
    if (pe.utopian || !pe.m_upper)
        throw Error(ErrorCode::UtopianInstance, "upper bound needs a non-utopian instance");
    const auto m = static_cast<i128>(*pe.m_upper);
    if (m == 0) return {0, 1};
    return reduce(m, static_cast<i128>(n) - m);
}

double theta_upper(const PerfectEquity& pe, std::size_t n)
{
    return theta_upper_exact(pe, n).value();
}

DominantEfficient dominant_efficient(const ConciseInstance& instance)
{
    const std::size_t n = instance.size();
    const double supply = instance.supply();
    const double tol = 1e-12 * std::max(1.0, supply);

    enum class State { Untouched, Partial, Full };
    std::vector<double> shipped(n, 0.0);
    std::vector<State> state(n, State::Untouched);

    // groups of equal demand, ascending; ties broken by index
    std::map<std::int64_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[to_micro(instance.demand(i))].push_back(i);

    double remaining = supply;
    for (auto& [key, members] : groups) {
        if (remaining <= tol) break;
        std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return to_micro(instance.effective_demand[a]) < to_micro(instance.effective_demand[b]);
        });

        // water level in pounds, common to every unfilled member of the group
        double level = 0.0;
        std::size_t pos = 0;
        while (pos < members.size()) {
            const std::int64_t cap_key = to_micro(instance.effective_demand[members[pos]]);
            std::size_t end = pos;
            while (end < members.size() && to_micro(instance.effective_demand[members[end]]) == cap_key) ++end;

            const double active = static_cast<double>(members.size() - pos);
            const double target = instance.effective_demand[members[pos]];
            const double need = active * std::max(0.0, target - level);
            if (need <= remaining + tol) {
                remaining = std::max(0.0, remaining - need);
                level = std::max(level, target);
                for (std::size_t k = pos; k < end; ++k) {
                    shipped[members[k]] = instance.effective_demand[members[k]];
                    state[members[k]] = State::Full;
                }
                pos = end;
                if (remaining <= tol) {
                    remaining = 0.0;
                    break;
                }
            } else {
                level += remaining / active;
                remaining = 0.0;
                break;
            }
        }
        for (std::size_t k = pos; k < members.size(); ++k) {
            shipped[members[k]] = level;
            if (level > 0.0) state[members[k]] = State::Partial;
        }
    }

    DominantEfficient de;
    de.beta_ef.resize(n);
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        de.beta_ef[i] = std::min(shipped[i] / instance.demand(i), instance.max_fill_rate[i]);
        de.xi += de.beta_ef[i];
        top = std::max(top, de.beta_ef[i]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (top - de.beta_ef[i] <= 1e-12) {
            de.max_set.push_back(i);
        } else if (state[i] != State::Full && to_micro(instance.effective_demand[i]) > 0) {
            de.fillable_set.push_back(i);
        }
    }

    const auto k_count = static_cast<i128>(de.max_set.size());
    if (de.fillable_set.empty()) {
        de.m_lower_exact = reduce(k_count, 1);
    } else {
        std::int64_t dm = std::numeric_limits<std::int64_t>::max();
        std::size_t dm_index = de.fillable_set.front();
        for (std::size_t i : de.fillable_set) {
            const std::int64_t d = to_micro(instance.demand(i));
            if (d < dm) {
                dm = d;
                dm_index = i;
            }
        }
        de.min_fillable_demand = instance.demand(dm_index);

        i128 sum_k = 0;
        for (std::size_t i : de.max_set) {
            const std::int64_t d = to_micro(instance.demand(i));
            if (d > dm)
                throw Error(ErrorCode::InvariantViolation,
                            "agency " + instance.base.agencies[i].id +
                                " attains the max fill-rate but has larger demand than D_m");
            sum_k += d;
        }
        de.m_lower_exact = reduce(k_count * dm - sum_k, dm);
    }
    de.m_lower = de.m_lower_exact.value();
    return de;
}

Fraction theta_lower_exact(const DominantEfficient& de, const Classification& cls, std::size_t n)
{
    if (cls.utopian) throw Error(ErrorCode::PreconditionViolated, "utopian instance");
    if (!cls.supply_constrained) throw Error(ErrorCode::PreconditionViolated, "not supply-constrained");
    // m/(n - m) with m = p/q  ->  p/(n q - p)
    const i128 p = de.m_lower_exact.num;
    const i128 q = de.m_lower_exact.den;
    const i128 den = static_cast<i128>(n) * q - p;
    if (den <= 0) throw Error(ErrorCode::InvariantViolation, "m^L is not below n");
    return reduce(p, den);
}

double theta_lower(const DominantEfficient& de, const Classification& cls, std::size_t n)
{
    return theta_lower_exact(de, cls, n).value();
}

SpectrumBounds spectrum(const ConciseInstance& instance)
{
    SpectrumBounds sb;
    sb.classification = classify(instance);
    sb.perfect_equity = perfect_equity(instance);
    sb.dominant_efficient = dominant_efficient(instance);
    const std::size_t n = instance.size();
    if (!sb.classification.utopian) {
        sb.theta_upper = theta_upper(sb.perfect_equity, n);
        if (sb.classification.supply_constrained)
            sb.theta_lower = theta_lower(sb.dominant_efficient, sb.classification, n);
    }
    return sb;
}

} // namespace foodbank
