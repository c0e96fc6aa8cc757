#include "foodbank/model2.hpp"

#include "foodbank/error.hpp"

#include <algorithm>

namespace foodbank {

lp::LinearProgram model2_program(const ConciseInstance& instance, double theta, bool tie_break)
{
    if (!(theta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be >= 0");
    const std::size_t n = instance.size();
    const double nd = static_cast<double>(n);

    lp::LinearProgram prog;
    prog.objective.assign(n + 1, 1.0 + theta);
    prog.objective[n] = -nd * theta;

    std::vector<double> supply_row(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) supply_row[i] = instance.demand(i);
    prog.add_row(std::move(supply_row), lp::Sense::LessEqual, instance.supply());

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(n + 1, 0.0);
        row[i] = 1.0;
        row[n] = -1.0;
        prog.add_row(std::move(row), lp::Sense::LessEqual, 0.0);
    }

    prog.upper_bounds.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) prog.upper_bounds[i] = instance.max_fill_rate[i];
    prog.upper_bounds[n] = 1.0;

    if (tie_break) {
        std::vector<double> total(n + 1, 1.0);
        total[n] = 0.0;
        std::vector<double> top(n + 1, 0.0);
        top[n] = -1.0;
        prog.tie_breaks = {std::move(total), std::move(top)};
    }
    return prog;
}

Allocation solve_model2(const ConciseInstance& instance, double theta)
{
    const auto sol = lp::solve_lp(model2_program(instance, theta));
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorCode::NumericalFailure, "fill-rate LP did not reach an optimum");

    const std::size_t n = instance.size();
    std::vector<double> beta(n);
    for (std::size_t i = 0; i < n; ++i)
        beta[i] = std::clamp(sol.values[i], 0.0, instance.max_fill_rate[i]);
    return allocation_from_fill_rates(beta, instance);
}

} // namespace foodbank
