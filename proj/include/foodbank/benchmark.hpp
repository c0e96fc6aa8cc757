#pragma once

#include "foodbank/model.hpp"

#include <vector>

namespace foodbank {

// Deviation-constrained proportional model: minimize leftover P subject to
// each share x_i / T staying within K of D_i / D, x_i <= C_i.
struct BenchmarkSolution {
    std::vector<double> shipped;
    double leftover = 0.0;
    double tolerance = 0.0; // K
};

BenchmarkSolution solve_benchmark(const Instance& instance, double k);

// Smallest K at which all supply can be shipped.
double k_upper(const Instance& instance);

} // namespace foodbank
