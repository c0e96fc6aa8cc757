#pragma once

#include "foodbank/model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace foodbank {

// num/den, both on the micro-pound grid or small counts.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct PerfectEquity {
    double beta_eq = 0.0;
    double beta_a = 0.0; // S / D
    double beta_b = 0.0; // min max_fill_rate
    bool utopian = false;
    std::vector<std::size_t> binding_min_set;  // J
    std::optional<std::size_t> m_upper;        // absent when utopian
};

PerfectEquity perfect_equity(const ConciseInstance& instance);

// m^U / (n - m^U); 0 when m^U = 0.
double theta_upper(const PerfectEquity& pe, std::size_t n);
Fraction theta_upper_exact(const PerfectEquity& pe, std::size_t n);

struct DominantEfficient {
    std::vector<double> beta_ef;
    double xi = 0.0;
    std::vector<std::size_t> max_set;       // K
    std::vector<std::size_t> fillable_set;  // L
    std::optional<double> min_fillable_demand; // D_m
    double m_lower = 0.0;
    Fraction m_lower_exact;
};

DominantEfficient dominant_efficient(const ConciseInstance& instance);

double theta_lower(const DominantEfficient& de, const Classification& cls, std::size_t n);
Fraction theta_lower_exact(const DominantEfficient& de, const Classification& cls, std::size_t n);

struct SpectrumBounds {
    Classification classification;
    PerfectEquity perfect_equity;
    DominantEfficient dominant_efficient;
    std::optional<double> theta_lower;  // absent: not applicable
    std::optional<double> theta_upper;  // absent: not applicable

    bool both_applicable() const { return theta_lower && theta_upper; }
    bool degenerate() const { return both_applicable() && *theta_lower == *theta_upper; }
};

SpectrumBounds spectrum(const ConciseInstance& instance);

} // namespace foodbank
