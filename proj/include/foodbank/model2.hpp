#pragma once

#include "foodbank/lp.hpp"
#include "foodbank/model.hpp"

namespace foodbank {

// Concise fill-rate LP. Variables beta_1..beta_n then beta (index n).
// With tie_break set, ties on the optimal face are broken by largest
// total fill-rate, then smallest max fill-rate.
lp::LinearProgram model2_program(const ConciseInstance& instance, double theta,
                                 bool tie_break = true);

Allocation solve_model2(const ConciseInstance& instance, double theta);

} // namespace foodbank
