#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace foodbank::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Row {
    std::vector<double> coefficients;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

// maximize objective.x  s.t. rows, lower <= x <= upper.
// tie_breaks are extra objectives optimized in order over the optimal face
// of the previous level; they only pick among tied vertices.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<Row> rows;
    std::vector<double> lower_bounds;                 // empty means all zero
    std::vector<std::optional<double>> upper_bounds;  // empty means none
    std::vector<std::vector<double>> tie_breaks;

    std::size_t num_variables() const { return objective.size(); }
    void add_row(std::vector<double> coefficients, Sense sense, double rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct LpSolution {
    Status status = Status::Infeasible;
    double objective_value = 0.0;
    std::vector<double> values;
    std::size_t pivots = 0;
};

LpSolution solve_lp(const LinearProgram& lp);

} // namespace foodbank::lp
