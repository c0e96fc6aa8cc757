#include "foodbank/frontier.hpp"

#include "foodbank/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace foodbank {

std::string_view to_string(ModelTag tag)
{
    return tag == ModelTag::Ours ? "ours" : "benchmark";
}

std::vector<double> theta_grid(const SpectrumBounds& bounds, std::size_t points)
{
    if (!bounds.both_applicable())
        throw Error(ErrorCode::BoundsNotApplicable, "theta grid needs both bounds");
    const double lo = *bounds.theta_lower;
    const double hi = *bounds.theta_upper;
    if (lo == hi || points <= 1) return {lo};
    std::vector<double> grid;
    for (double t : unit_grid(points)) grid.push_back(t == 1.0 ? hi : lo + t * (hi - lo));
    return grid;
}

std::vector<double> unit_grid(std::size_t points)
{
    if (points == 0) throw Error(ErrorCode::InvalidArgument, "grid needs at least one point");
    if (points == 1) return {0.0};
    std::vector<double> t(points);
    for (std::size_t k = 0; k < points; ++k)
        t[k] = static_cast<double>(k) / static_cast<double>(points - 1);
    t.back() = 1.0;
    return t;
}

Evaluation evaluate(const Instance& instance, std::span<const double> shipped, double parameter)
{
    const std::size_t n = instance.size();
    Evaluation ev;
    ev.parameter = parameter;

    std::vector<double> beta(n);
    std::vector<double> util;
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        beta[i] = shipped[i] / instance.agencies[i].demand;
        ev.total_fill_rate += beta[i];
        top = std::max(top, beta[i]);
        if (instance.agencies[i].capacity > 0.0) util.push_back(shipped[i] / instance.agencies[i].capacity);
    }
    for (double b : beta) ev.total_deviation += top - b;

    ev.efficiency = efficiency(waste(shipped, instance), instance.supply);
    ev.equity = equity_score(beta);
    ev.utiloquity = util.empty() ? 1.0 : utiloquity_score(std::span<const double>(util));
    for (std::size_t m = 0; m < kOtherMeasures.size(); ++m)
        ev.other_inequity[m] = inequity(beta, kOtherMeasures[m]).value;
    return ev;
}

std::size_t resolve_workers(std::size_t requested)
{
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FOODBANK_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

namespace {

std::vector<Evaluation> sweep_ours(const Instance& instance, const std::vector<double>& positions,
                                   bool allow_trivial, PolicyKind& kind)
{
    const auto ci = to_concise(instance);
    const auto bounds = spectrum(ci);
    const auto range = policy_range(bounds);
    kind = range.kind;
    if (range.kind != PolicyKind::Spectrum && !allow_trivial)
        throw Error(ErrorCode::BoundsNotApplicable,
                    bounds.classification.utopian ? "instance is utopian" : "instance is not supply-constrained");

    std::vector<Evaluation> row;
    row.reserve(positions.size());
    if (range.kind == PolicyKind::Utopian) {
        const std::vector<double> beta(ci.size(), bounds.perfect_equity.beta_eq);
        const auto alloc = allocation_from_fill_rates(beta, ci);
        const auto ev = evaluate(instance, alloc.shipped, 0.0);
        row.assign(positions.size(), ev);
        return row;
    }
    for (double t : positions) {
        const double theta = t == 1.0 ? range.high : range.low + t * (range.high - range.low);
        const auto alloc = solve_policy(ci, bounds, theta);
        row.push_back(evaluate(instance, alloc.shipped, theta));
    }
    return row;
}

std::vector<Evaluation> sweep_benchmark(const Instance& instance, const std::vector<double>& positions,
                                        bool allow_trivial)
{
    double capacity = 0.0;
    for (const auto& a : instance.agencies) capacity += a.capacity;
    double ku = 1.0;
    if (capacity >= instance.supply) {
        ku = k_upper(instance);
    } else if (!allow_trivial) {
        throw Error(ErrorCode::BoundsNotApplicable, "total capacity is below supply");
    }

    std::vector<Evaluation> row;
    row.reserve(positions.size());
    for (double t : positions) {
        const double k = t * ku;
        const auto sol = solve_benchmark(instance, k);
        row.push_back(evaluate(instance, sol.shipped, k));
    }
    return row;
}

} // namespace

SweepTable sweep_samples(std::span<const Instance> instances, ModelTag model, const SweepOptions& options)
{
    SweepTable table;
    table.model = model;
    table.positions = unit_grid(options.points);
    const std::size_t count = instances.size();
    table.samples.resize(count);
    table.kinds.assign(count, PolicyKind::Spectrum);

    std::atomic<std::size_t> next{0};
    std::mutex fail_mutex;
    std::size_t fail_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr failure;

    auto work = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= count) return;
            try {
                if (model == ModelTag::Ours) {
                    PolicyKind kind{};
                    table.samples[r] = sweep_ours(instances[r], table.positions, options.allow_trivial, kind);
                    table.kinds[r] = kind;
                } else {
                    table.samples[r] = sweep_benchmark(instances[r], table.positions, options.allow_trivial);
                }
            } catch (const Error& e) {
                std::lock_guard lock(fail_mutex);
                if (r < fail_index) {
                    fail_index = r;
                    failure = std::make_exception_ptr(
                        Error(e.code(), "realization " + std::to_string(r) + ": " + e.what()));
                }
            } catch (...) {
                std::lock_guard lock(fail_mutex);
                if (r < fail_index) {
                    fail_index = r;
                    failure = std::current_exception();
                }
            }
        }
    };

    const std::size_t workers = std::min(resolve_workers(options.workers), std::max<std::size_t>(1, count));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

std::vector<FrontierPoint> summarize(const SweepTable& table, bool deduplicate)
{
    std::vector<FrontierPoint> out;
    const std::size_t count = table.samples.size();
    if (count == 0) return out;
    const double inv = 1.0 / static_cast<double>(count);

    for (std::size_t p = 0; p < table.positions.size(); ++p) {
        FrontierPoint fp;
        fp.model = table.model;
        fp.grid_position = p;
        fp.position = table.positions[p];
        fp.realizations = count;
        // fixed summation order keeps the means independent of worker count
        for (std::size_t r = 0; r < count; ++r) {
            const auto& ev = table.samples[r][p];
            fp.parameter += ev.parameter;
            fp.efficiency += ev.efficiency;
            fp.equity += ev.equity;
            fp.utiloquity += ev.utiloquity;
            for (std::size_t m = 0; m < 4; ++m) fp.other_inequity[m] += ev.other_inequity[m];
        }
        fp.parameter *= inv;
        fp.efficiency *= inv;
        fp.equity *= inv;
        fp.utiloquity *= inv;
        for (double& v : fp.other_inequity) v *= inv;

        if (deduplicate) {
            const bool seen = std::any_of(out.begin(), out.end(), [&](const FrontierPoint& q) {
                return std::fabs(q.equity - fp.equity) <= 1e-9 && std::fabs(q.efficiency - fp.efficiency) <= 1e-9;
            });
            if (seen) continue;
        }
        out.push_back(fp);
    }
    return out;
}

std::vector<FrontierPoint> sweep(std::span<const Instance> instances, ModelTag model, const SweepOptions& options)
{
    return summarize(sweep_samples(instances, model, options));
}

std::vector<double> standardized_equity(std::span<const FrontierPoint> series, std::size_t measure,
                                        bool* degenerate)
{
    if (measure >= kOtherMeasures.size()) throw Error(ErrorCode::InvalidArgument, "measure index out of range");
    if (series.size() < 2) {
        if (degenerate) *degenerate = true;
        return std::vector<double>(series.size(), 1.0);
    }
    std::vector<double> raw;
    raw.reserve(series.size());
    for (const auto& p : series) raw.push_back(p.other_inequity[measure]);
    const auto st = standardize_series(raw);
    if (degenerate) *degenerate = st.degenerate;
    std::vector<double> out;
    out.reserve(st.values.size());
    for (double v : st.values) out.push_back(1.0 - v);
    return out;
}

std::vector<FrontierSample> to_samples(std::span<const FrontierPoint> series)
{
    std::vector<FrontierSample> out;
    out.reserve(series.size());
    for (const auto& p : series) out.push_back({p.equity, p.efficiency});
    std::stable_sort(out.begin(), out.end(),
                     [](const FrontierSample& a, const FrontierSample& b) { return a.equity < b.equity; });
    return out;
}

namespace {

template <class Get>
DominanceCheck dominance_on(std::span<const FrontierPoint> ours, std::span<const FrontierPoint> bench,
                            double tolerance, Get get)
{
    constexpr double kMatch = 1e-12;
    DominanceCheck check;
    check.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& p : ours) {
        const double e = p.equity;
        double best = -std::numeric_limits<double>::infinity();
        if (bench.size() == 1 && std::fabs(bench[0].equity - e) <= kMatch) best = get(bench[0]);
        for (std::size_t k = 0; k + 1 < bench.size(); ++k) {
            const auto& a = bench[k];
            const auto& b = bench[k + 1];
            const double lo = std::min(a.equity, b.equity);
            const double hi = std::max(a.equity, b.equity);
            if (e < lo - kMatch || e > hi + kMatch) continue;
            double v;
            if (hi - lo <= kMatch) {
                v = std::max(get(a), get(b));
            } else {
                const double w = std::clamp((e - a.equity) / (b.equity - a.equity), 0.0, 1.0);
                v = get(a) + w * (get(b) - get(a));
            }
            best = std::max(best, v);
        }
        if (!std::isfinite(best)) continue;
        ++check.compared;
        const double margin = get(p) - best;
        if (margin < check.worst_margin) {
            check.worst_margin = margin;
            check.worst_equity = e;
        }
        if (margin < -tolerance) check.passed = false;
    }
    if (check.compared == 0) check.worst_margin = 0.0;
    return check;
}

} // namespace

DominanceReport check_dominance(std::span<const FrontierPoint> ours, std::span<const FrontierPoint> benchmark,
                                double tolerance)
{
    DominanceReport r;
    r.efficiency = dominance_on(ours, benchmark, tolerance, [](const FrontierPoint& p) { return p.efficiency; });
    r.utiloquity = dominance_on(ours, benchmark, tolerance, [](const FrontierPoint& p) { return p.utiloquity; });
    return r;
}

} // namespace foodbank
