#include "foodbank/benchmark.hpp"

#include "foodbank/error.hpp"
#include "foodbank/lp.hpp"

#include <algorithm>
#include <numeric>

namespace foodbank {

BenchmarkSolution solve_benchmark(const Instance& instance, double k)
{
    if (!(k >= 0.0 && k <= 1.0)) throw Error(ErrorCode::InvalidArgument, "K must lie in [0, 1]");
    const std::size_t n = instance.size();
    const double total = std::accumulate(instance.agencies.begin(), instance.agencies.end(), 0.0,
                                         [](double acc, const Agency& a) { return acc + a.demand; });

    // P = S - sum(x) is eliminated: min P  <=>  max sum(x) with sum(x) <= S.
    lp::LinearProgram prog;
    prog.objective.assign(n, 1.0);
    prog.add_row(std::vector<double>(n, 1.0), lp::Sense::LessEqual, instance.supply);

    // Shares homogenized by T = sum(x):
    //   x_i - (p_i + K) T <= 0   and   (p_i - K) T - x_i <= 0
    for (std::size_t i = 0; i < n; ++i) {
        const double p = instance.agencies[i].demand / total;
        std::vector<double> upper(n, -(p + k));
        upper[i] += 1.0;
        prog.add_row(std::move(upper), lp::Sense::LessEqual, 0.0);
        std::vector<double> lower(n, p - k);
        lower[i] -= 1.0;
        prog.add_row(std::move(lower), lp::Sense::LessEqual, 0.0);
    }
    prog.upper_bounds.resize(n);
    for (std::size_t i = 0; i < n; ++i) prog.upper_bounds[i] = instance.agencies[i].capacity;

    const auto sol = lp::solve_lp(prog);
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorCode::NumericalFailure, "benchmark LP did not reach an optimum");

    BenchmarkSolution out;
    out.tolerance = k;
    out.shipped.resize(n);
    double shipped = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.shipped[i] = std::clamp(sol.values[i], 0.0, instance.agencies[i].capacity);
        shipped += out.shipped[i];
    }
    out.leftover = std::max(0.0, instance.supply - shipped);
    return out;
}

double k_upper(const Instance& instance)
{
    const std::size_t n = instance.size();
    const double s = instance.supply;
    double cap = 0.0;
    double total = 0.0;
    for (const auto& a : instance.agencies) {
        cap += a.capacity;
        total += a.demand;
    }
    if (cap < s) throw Error(ErrorCode::PerfectEfficiencyImpossible, "total capacity is below supply");
    if (s == 0.0) return 0.0;

    // variables x_1..x_n, u = K*S in pounds (index n); minimize u.
    // Keeping u in pounds keeps every column on one scale; K itself
    // multiplies S and starves the reduced costs.
    lp::LinearProgram prog;
    prog.objective.assign(n + 1, 0.0);
    prog.objective[n] = -1.0;
    std::vector<double> ship(n + 1, 1.0);
    ship[n] = 0.0;
    prog.add_row(std::move(ship), lp::Sense::Equal, s);
    for (std::size_t i = 0; i < n; ++i) {
        const double share = instance.agencies[i].demand / total * s;
        std::vector<double> above(n + 1, 0.0);
        above[i] = 1.0;
        above[n] = -1.0;
        prog.add_row(above, lp::Sense::LessEqual, share);
        std::vector<double> below(n + 1, 0.0);
        below[i] = -1.0;
        below[n] = -1.0;
        prog.add_row(std::move(below), lp::Sense::LessEqual, -share);
    }
    prog.upper_bounds.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) prog.upper_bounds[i] = instance.agencies[i].capacity;

    const auto sol = lp::solve_lp(prog);
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorCode::NumericalFailure, "K^U LP did not reach an optimum");
    return std::clamp(sol.values[n] / s, 0.0, 1.0);
}

} // namespace foodbank
