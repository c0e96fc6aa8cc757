#include "foodbank/lp.hpp"

#include "foodbank/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace foodbank::lp {

void LinearProgram::add_row(std::vector<double> coefficients, Sense sense, double rhs)
{
    rows.push_back({std::move(coefficients), sense, rhs});
}

namespace {

constexpr double kOptTol = 1e-10;   // reduced-cost threshold
constexpr double kPivotTol = 1e-10; // smallest usable pivot entry
constexpr double kZeroRowTol = 1e-9;

bool finite(double v) { return std::isfinite(v); }

void check_shape(const LinearProgram& lp)
{
    const std::size_t n = lp.num_variables();
    auto bad = [](const std::string& what) { throw Error(ErrorCode::DimensionMismatch, what); };
    for (double c : lp.objective)
        if (!finite(c)) bad("objective has a non-finite coefficient");
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        const auto& row = lp.rows[r];
        if (row.coefficients.size() != n) bad("row " + std::to_string(r) + " has wrong length");
        if (!finite(row.rhs)) bad("row " + std::to_string(r) + " has a non-finite rhs");
        for (double a : row.coefficients)
            if (!finite(a)) bad("row " + std::to_string(r) + " has a non-finite coefficient");
    }
    if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n) bad("lower bounds have wrong length");
    if (!lp.upper_bounds.empty() && lp.upper_bounds.size() != n) bad("upper bounds have wrong length");
    for (double l : lp.lower_bounds)
        if (!finite(l)) bad("lower bound is not finite");
    for (const auto& u : lp.upper_bounds)
        if (u && !finite(*u)) bad("upper bound is not finite");
    for (const auto& t : lp.tie_breaks)
        if (t.size() != n) bad("tie-break objective has wrong length");
}

// Dense tableau. Columns: structural, then slack/surplus, then artificial,
// then the right-hand side. Objective rows ride along and are pivoted too.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), width_(cols + 1), data_(rows * (cols + 1), 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * width_ + c]; }
    double& rhs(std::size_t r) { return data_[r * width_ + width_ - 1]; }
    double rhs(std::size_t r) const { return data_[r * width_ + width_ - 1]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return width_ - 1; }

    void pivot(std::size_t pr, std::size_t pc, std::vector<std::vector<double>>& objectives)
    {
        double* prow = &data_[pr * width_];
        const double inv = 1.0 / prow[pc];
        for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
        prow[pc] = 1.0;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == pr) continue;
            double* row = &data_[r * width_];
            const double f = row[pc];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < width_; ++c) row[c] -= f * prow[c];
            row[pc] = 0.0;
        }
        for (auto& obj : objectives) {
            const double f = obj[pc];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < width_; ++c) obj[c] -= f * prow[c];
            obj[pc] = 0.0;
        }
    }

private:
    std::size_t m_;
    std::size_t width_;
    std::vector<double> data_;
};

enum class Outcome { Optimal, Unbounded };

struct Simplex {
    Tableau t;
    std::vector<std::size_t> basis;
    std::vector<std::vector<double>> objectives; // reduced-cost rows, maximize
    std::vector<char> blocked;                   // columns never allowed to enter
    std::size_t pivots = 0;
    std::size_t pivot_cap = 0;
    double rhs_scale = 1.0;

    // Bland: smallest improving column enters; ratio ties go to the
    // smallest basic index.
    Outcome optimize(std::size_t level)
    {
        auto& obj = objectives[level];
        const std::size_t cols = t.cols();
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t c = 0; c < cols; ++c) {
                if (!blocked[c] && obj[c] > kOptTol) {
                    enter = c;
                    break;
                }
            }
            if (enter == cols) return Outcome::Optimal;

            std::size_t leave = t.rows();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < t.rows(); ++r) {
                const double a = t.at(r, enter);
                if (a <= kPivotTol) continue;
                const double ratio = std::max(0.0, t.rhs(r)) / a;
                if (leave == t.rows()) {
                    best = ratio;
                    leave = r;
                    continue;
                }
                const double eps = 1e-12 * std::max(1.0, best);
                if (ratio < best - eps) {
                    best = ratio;
                    leave = r;
                } else if (ratio <= best + eps && basis[r] < basis[leave]) {
                    leave = r;
                }
            }
            if (leave == t.rows()) return Outcome::Unbounded;

            if (++pivots > pivot_cap)
                throw Error(ErrorCode::NumericalFailure, "simplex pivot cap exceeded");
            t.pivot(leave, enter, objectives);
            basis[leave] = enter;
        }
    }
};

} // namespace

LpSolution solve_lp(const LinearProgram& lp)
{
    check_shape(lp);
    const std::size_t n = lp.num_variables();

    std::vector<double> lower(n, 0.0);
    if (!lp.lower_bounds.empty()) lower = lp.lower_bounds;

    LpSolution out;

    // Gather rows in the shifted variables x' = x - lower.
    struct Work {
        std::vector<double> a;
        Sense sense;
        double b;
    };
    std::vector<Work> work;
    work.reserve(lp.rows.size() + n);
    auto push = [&](std::vector<double> a, Sense sense, double b) {
        double scale = 0.0;
        for (double v : a) scale = std::max(scale, std::fabs(v));
        if (scale == 0.0) {
            const double tol = kZeroRowTol * std::max(1.0, std::fabs(b));
            const bool ok = (sense == Sense::LessEqual && b >= -tol) ||
                            (sense == Sense::GreaterEqual && b <= tol) ||
                            (sense == Sense::Equal && std::fabs(b) <= tol);
            return ok;
        }
        for (double& v : a) v /= scale;
        b /= scale;
        if (b < 0.0) {
            for (double& v : a) v = -v;
            b = -b;
            if (sense == Sense::LessEqual) sense = Sense::GreaterEqual;
            else if (sense == Sense::GreaterEqual) sense = Sense::LessEqual;
        }
        work.push_back({std::move(a), sense, b});
        return true;
    };

    for (const auto& row : lp.rows) {
        double b = row.rhs;
        for (std::size_t j = 0; j < n; ++j) b -= row.coefficients[j] * lower[j];
        if (!push(row.coefficients, row.sense, b)) return out; // Infeasible
    }
    if (!lp.upper_bounds.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!lp.upper_bounds[j]) continue;
            if (*lp.upper_bounds[j] < lower[j]) return out;
            std::vector<double> a(n, 0.0);
            a[j] = 1.0;
            push(std::move(a), Sense::LessEqual, *lp.upper_bounds[j] - lower[j]);
        }
    }

    const std::size_t m = work.size();
    std::size_t n_slack = 0;
    std::size_t n_art = 0;
    for (const auto& w : work) {
        if (w.sense != Sense::Equal) ++n_slack;
        if (w.sense != Sense::LessEqual) ++n_art;
    }
    const std::size_t cols = n + n_slack + n_art;
    const std::size_t art_begin = n + n_slack;

    Simplex s{Tableau(m, cols), std::vector<std::size_t>(m), {}, std::vector<char>(cols, 0), 0, 0, 1.0};
    s.pivot_cap = 50 * (m + cols) + 1000;

    std::size_t next_slack = n;
    std::size_t next_art = art_begin;
    for (std::size_t r = 0; r < m; ++r) {
        const auto& w = work[r];
        for (std::size_t j = 0; j < n; ++j) s.t.at(r, j) = w.a[j];
        s.t.rhs(r) = w.b;
        s.rhs_scale = std::max(s.rhs_scale, w.b);
        if (w.sense == Sense::LessEqual) {
            s.t.at(r, next_slack) = 1.0;
            s.basis[r] = next_slack++;
        } else {
            if (w.sense == Sense::GreaterEqual) s.t.at(r, next_slack++) = -1.0;
            s.t.at(r, next_art) = 1.0;
            s.basis[r] = next_art++;
        }
    }

    // Phase one: maximize -sum(artificials).
    if (n_art > 0) {
        std::vector<double> phase1(cols + 1, 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            if (s.basis[r] < art_begin) continue;
            for (std::size_t c = 0; c < art_begin; ++c) phase1[c] += s.t.at(r, c);
            phase1[cols] += s.t.rhs(r);
        }
        s.objectives.push_back(std::move(phase1));
        s.optimize(0);

        double infeasibility = 0.0;
        for (std::size_t r = 0; r < m; ++r)
            if (s.basis[r] >= art_begin) infeasibility += std::max(0.0, s.t.rhs(r));
        if (infeasibility > 1e-9 * s.rhs_scale) return out;

        // Drive zero-level artificials out where a real column can replace them.
        for (std::size_t r = 0; r < m; ++r) {
            if (s.basis[r] < art_begin) continue;
            for (std::size_t c = 0; c < art_begin; ++c) {
                if (std::fabs(s.t.at(r, c)) > 1e-9) {
                    s.t.pivot(r, c, s.objectives);
                    s.basis[r] = c;
                    break;
                }
            }
        }
        for (std::size_t c = art_begin; c < cols; ++c) s.blocked[c] = 1;
        s.objectives.clear();
    }

    // Phase two: primary objective, then tie-breaks on the optimal face.
    auto reduced_row = [&](const std::vector<double>& c) {
        std::vector<double> row(cols + 1, 0.0);
        for (std::size_t j = 0; j < n; ++j) row[j] = c[j];
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t b = s.basis[r];
            if (b >= n || c[b] == 0.0) continue;
            const double cb = c[b];
            for (std::size_t k = 0; k <= cols; ++k) row[k] -= cb * (k == cols ? s.t.rhs(r) : s.t.at(r, k));
        }
        for (std::size_t r = 0; r < m; ++r) row[s.basis[r]] = 0.0;
        return row;
    };
    s.objectives.push_back(reduced_row(lp.objective));
    for (const auto& tb : lp.tie_breaks) s.objectives.push_back(reduced_row(tb));

    for (std::size_t level = 0; level < s.objectives.size(); ++level) {
        if (s.optimize(level) == Outcome::Unbounded) {
            if (level == 0) {
                out.status = Status::Unbounded;
                out.pivots = s.pivots;
                return out;
            }
            break; // a tie-break unbounded on the face; keep the current vertex
        }
        // Lock columns whose entry would lose objective at this level.
        const auto& obj = s.objectives[level];
        for (std::size_t c = 0; c < cols; ++c)
            if (obj[c] < -kOptTol) s.blocked[c] = 1;
    }

    out.status = Status::Optimal;
    out.pivots = s.pivots;
    out.values = lower;
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t b = s.basis[r];
        if (b < n) out.values[b] = lower[b] + std::max(0.0, s.t.rhs(r));
    }
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * out.values[j];
    out.objective_value = value;
    return out;
}

} // namespace foodbank::lp
