// Acceptance runner: one PASS/FAIL line per criterion, sub-check detail
// indented below it. --criterion N runs a single one.

#include "foodbank/benchmark.hpp"
#include "foodbank/closed_form.hpp"
#include "foodbank/error.hpp"
#include "foodbank/frontier.hpp"
#include "foodbank/metrics.hpp"
#include "foodbank/model2.hpp"
#include "foodbank/policy.hpp"
#include "foodbank/scenario.hpp"
#include "foodbank/sensitivity.hpp"
#include "oracles.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace foodbank;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
    bool ok = true;
    std::vector<std::string> lines;

    void check(bool cond, const std::string& what)
    {
        ok = ok && cond;
        lines.push_back(fmt::format("  [{}] {}", cond ? "ok" : "FAIL", what));
    }
    void note(const std::string& what) { lines.push_back("  " + what); }
};

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Random non-utopian instances on the half-pound grid, n in [lo, hi].
std::vector<Instance> population(std::uint64_t seed, std::size_t count, int lo, int hi, bool constrained)
{
    oracle::InstanceGen gen(seed);
    std::vector<Instance> out;
    while (out.size() < count) {
        auto in = gen.next(static_cast<std::size_t>(gen.uniform(lo, hi)));
        const auto cls = classify(to_concise(in));
        if (cls.utopian) continue;
        if (constrained && !cls.supply_constrained) continue;
        out.push_back(std::move(in));
    }
    return out;
}

// ---------------------------------------------------------------------------

Result worked_examples()
{
    Result r;
    const auto t0 = Clock::now();

    // two agencies, capacities 1 and 5
    const double c1[] = {1, 5}, d1[] = {4, 8};
    const auto in1 = make_instance(c1, d1, 5);
    const auto ci1 = to_concise(in1);
    const auto sb1 = spectrum(ci1);
    const auto eq = solve_policy(ci1, sb1, *sb1.theta_upper);
    const double eff1 = efficiency(waste(eq.shipped, in1), in1.supply);

    // capacities 5 and 3, demands 5 and 10
    const double c2[] = {5, 3}, d2[] = {5, 10};
    const auto in2 = make_instance(c2, d2, 5);
    const auto ci2 = to_concise(in2);
    const auto sb2 = spectrum(ci2);
    const auto lp0 = solve_model2(ci2, 0.0);
    const double eff0 = efficiency(waste(lp0.shipped, in2), in2.supply);
    const std::vector<double> first{1.0, 0.0}, second{0.4, 0.3};
    const auto a1 = allocation_from_fill_rates(first, ci2);
    const auto a2 = allocation_from_fill_rates(second, ci2);
    const double e1 = efficiency(waste(a1.shipped, in2), in2.supply);
    const double e2 = efficiency(waste(a2.shipped, in2), in2.supply);

    bool dominates = true;
    double worst = 1e300;
    const auto& ef = sb2.dominant_efficient.beta_ef;
    for (int k = 0; k <= 1000; ++k) {
        const double theta = *sb2.theta_lower * k / 1000.0;
        for (const auto* alt : {&first, &second}) {
            const double gap = objective(ef, theta) - objective(*alt, theta);
            worst = std::min(worst, gap);
            if (gap < -1e-12) dominates = false;
        }
    }
    const double elapsed = seconds_since(t0);

    r.check(eq.shipped[0] == 1.0 && eq.shipped[1] == 2.0,
            fmt::format("perfect-equity allocation x = ({}, {}), expected (1, 2)", eq.shipped[0], eq.shipped[1]));
    r.check(eff1 == 0.6, fmt::format("its efficiency {} (expected 0.6)", eff1));
    r.check(eff0 == 1.0, fmt::format("theta = 0 solve reaches efficiency {}", eff0));
    r.check(e1 == 1.0 && e2 == 1.0,
            fmt::format("(100%,0%) and (40%,30%) feasible, efficiencies {} and {}; fill-rate objectives {} and {}",
                        e1, e2, objective(first, 0.0), objective(second, 0.0)));
    r.check(dominates, fmt::format("dominant solution ({}, {}) weakly dominates both on [0, theta_L = {}], "
                                   "worst gap {:.3g}",
                                   ef[0], ef[1], *sb2.theta_lower, worst));
    r.check(elapsed < 1e-3, fmt::format("runtime {:.3f} ms (limit 1 ms)", elapsed * 1e3));
    return r;
}

Result upper_bound_suite()
{
    Result r;
    const auto t0 = Clock::now();
    const auto set = population(2001, 10000, 2, 8, false);
    std::size_t fail_a = 0, fail_b = 0, tested_b = 0;
    double worst_a = 0.0;
    for (const auto& in : set) {
        const auto ci = to_concise(in);
        const auto sb = spectrum(ci);
        const auto range = policy_range(sb);
        const double tu = *sb.theta_upper;
        const double beq = sb.perfect_equity.beta_eq;

        const auto above = solve_model2(ci, tu + 1e-6);
        double dev = 0.0;
        for (double b : above.fill_rates) dev = std::max(dev, std::fabs(b - beq));
        worst_a = std::max(worst_a, dev);
        if (dev > 1e-7) ++fail_a;

        if (tu > range.low) {
            ++tested_b;
            const double theta = tu * (1 - 1e-4);
            const auto below = solve_model2(ci, theta);
            if (!(objective(below, theta) > static_cast<double>(ci.size()) * beq)) ++fail_b;
        }
    }
    const double elapsed = seconds_since(t0);
    r.check(fail_a == 0, fmt::format("(a) beta_EQ above theta_U: {} failures of {}, worst deviation {:.3g}", fail_a,
                                     set.size(), worst_a));
    r.check(fail_b == 0, fmt::format("(b) objective above n*beta_EQ just below theta_U: {} failures of {}", fail_b,
                                     tested_b));
    r.check(elapsed < 60, fmt::format("runtime {:.2f} s (limit 60 s)", elapsed));
    return r;
}

Result lower_bound_suite()
{
    Result r;
    const auto t0 = Clock::now();
    const auto set = population(2001, 10000, 2, 8, true);
    std::size_t fail_a = 0, fail_b = 0, fail_c = 0, tested_c = 0;
    double worst_a = 0.0;
    for (const auto& in : set) {
        const auto ci = to_concise(in);
        const auto sb = spectrum(ci);
        const double xi = sb.dominant_efficient.xi;
        const double tl = *sb.theta_lower;
        const double tu = *sb.theta_upper;

        const auto opt = lp::solve_lp(model2_program(ci, 0.0));
        const double gap = std::fabs(sum(sb.dominant_efficient.beta_ef) - opt.objective_value);
        worst_a = std::max(worst_a, gap);
        if (opt.status != lp::Status::Optimal || gap > 1e-9) ++fail_a;

        for (double theta : {0.0, tl / 2, tl})
            if (std::fabs(sum(solve_model2(ci, theta).fill_rates) - xi) > 1e-9) ++fail_b;
        if (tl < tu) {
            ++tested_c;
            if (!(sum(solve_model2(ci, tl + 1e-4 * (tu - tl)).fill_rates) < xi)) ++fail_c;
        }
    }
    const double c3[] = {20, 50, 5}, d3[] = {20, 50, 50};
    const auto worked = spectrum(to_concise(make_instance(c3, d3, 50)));
    const double elapsed = seconds_since(t0);

    r.check(fail_a == 0, fmt::format("(a) sum of beta_EF equals the theta = 0 optimum: {} failures of {}, worst {:.3g}",
                                     fail_a, set.size(), worst_a));
    r.check(fail_b == 0, fmt::format("(b) total fill-rate equals xi at 0, theta_L/2, theta_L: {} failures", fail_b));
    r.check(fail_c == 0,
            fmt::format("(b) total fill-rate drops below xi just above theta_L: {} failures of {}", fail_c, tested_c));
    r.check(worked.theta_lower && *worked.theta_lower == 0.25,
            fmt::format("(c) worked theta_L = {}", worked.theta_lower ? *worked.theta_lower : -1.0));
    r.check(elapsed < 60, fmt::format("runtime {:.2f} s (limit 60 s)", elapsed));
    return r;
}

Result grid_oracle()
{
    Result r;
    const auto t0 = Clock::now();
    constexpr int kSteps = 64;
    oracle::InstanceGen gen(4001);
    std::size_t over = 0, under = 0;
    double worst_over = -1e300, worst_under = -1e300;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = static_cast<std::size_t>(2 + k % 3);
        const auto ci = to_concise(gen.next(n));
        const double theta = gen.uniform(0, 24) / 8.0;
        const double lp_value = objective(solve_model2(ci, theta), theta);
        const double grid = oracle::grid_search(ci, theta, kSteps);
        const double bound = (theta * static_cast<double>(n) + static_cast<double>(n)) / kSteps;
        worst_over = std::max(worst_over, grid - lp_value);
        worst_under = std::max(worst_under, lp_value - grid);
        if (grid > lp_value + bound) ++over;
        if (lp_value > grid + bound) ++under;
    }
    const double elapsed = seconds_since(t0);
    r.check(over == 0, fmt::format("grid never beats the LP by more than the grid bound: {} violations, "
                                   "max (grid - LP) {:.3g}",
                                   over, worst_over));
    r.check(under == 0, fmt::format("LP within the grid bound of the grid optimum: {} violations, max (LP - grid) "
                                    "{:.3g}",
                                    under, worst_under));
    r.check(elapsed < 120, fmt::format("runtime {:.2f} s (limit 120 s)", elapsed));
    return r;
}

Result benchmark_consistency()
{
    Result r;
    const auto t0 = Clock::now();
    oracle::InstanceGen gen(5001);
    std::size_t tested = 0, fail_eq = 0, fail_p = 0, fail_eff = 0;
    double worst_gini = 0.0, worst_p = 0.0, worst_eff = 0.0;
    while (tested < 1000) {
        const auto in = gen.next(static_cast<std::size_t>(gen.uniform(2, 8)));
        if (!(in.supply > 0.0) || sum(in.capacities()) < in.supply) continue;
        ++tested;
        const auto ci = to_concise(in);
        const auto sb = spectrum(ci);

        const auto b0 = solve_benchmark(in, 0.0);
        std::vector<double> rates(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) rates[i] = b0.shipped[i] / in.agencies[i].demand;
        const double g = gini(rates);
        worst_gini = std::max(worst_gini, g);
        if (g > 1e-7) ++fail_eq;

        const auto bu = solve_benchmark(in, k_upper(in));
        worst_p = std::max(worst_p, bu.leftover / in.supply);
        if (bu.leftover > 1e-6 * in.supply) ++fail_p;

        const std::vector<double> beq(in.size(), sb.perfect_equity.beta_eq);
        const auto ours = sb.classification.utopian ? allocation_from_fill_rates(beq, ci)
                                                    : solve_policy(ci, sb, *sb.theta_upper);
        const double d = std::fabs(efficiency(waste(b0.shipped, in), in.supply) -
                                   efficiency(waste(ours.shipped, in), in.supply));
        worst_eff = std::max(worst_eff, d);
        if (d > 1e-6) ++fail_eff;
    }
    const double elapsed = seconds_since(t0);
    r.check(fail_eq == 0, fmt::format("K = 0 fill-rates equal: {} failures of {}, worst Gini {:.3g}", fail_eq, tested,
                                      worst_gini));
    r.check(fail_p == 0, fmt::format("K = K^U leaves P <= 1e-6 S: {} failures, worst P/S {:.3g}", fail_p, worst_p));
    r.check(fail_eff == 0, fmt::format("K = 0 efficiency matches ours at theta_U: {} failures, worst gap {:.3g}",
                                       fail_eff, worst_eff));
    r.check(elapsed < 60, fmt::format("runtime {:.2f} s (limit 60 s)", elapsed));
    return r;
}

ScenarioConfig desk_config()
{
    return synthesize_config(SynthesisOptions{});
}

Result desk_frontier()
{
    Result r;
    const auto t0 = Clock::now();
    const auto cfg = desk_config();
    r.note(fmt::format("{} agencies, S = {}, {} realizations per bin, 50 points", cfg.nominal_demands.size(),
                       cfg.supply, cfg.count));
    SweepOptions opts;
    opts.points = 50;
    opts.workers = 1;

    for (auto bin : {VariabilityBin::Low, VariabilityBin::High}) {
        const auto set = generate_bin(cfg, bin);
        const auto instances = build_instances(set, cfg);
        const auto ours = sweep_samples(instances, ModelTag::Ours, opts);
        const auto bench = sweep_samples(instances, ModelTag::Benchmark, opts);

        std::size_t bad_eq = 0, bad_eff = 0, bad_mono = 0;
        for (const auto& row : ours.samples) {
            if (std::fabs(row.back().equity - 1.0) > 1e-7) ++bad_eq;
            if (std::fabs(row.front().efficiency - 1.0) > 1e-7) ++bad_eff;
            for (std::size_t p = 1; p < row.size(); ++p)
                if (row[p].total_fill_rate > row[p - 1].total_fill_rate + 1e-9) {
                    ++bad_mono;
                    break;
                }
        }
        const auto ours_pts = summarize(ours);
        const auto bench_pts = summarize(bench);
        const auto dom = check_dominance(ours_pts, bench_pts);
        const auto name = to_string(bin);

        r.check(bad_eq == 0 && std::fabs(ours_pts.back().equity - 1.0) <= 1e-7,
                fmt::format("{} bin: equity = 1 at the theta_U position ({} realizations off)", name, bad_eq));
        r.check(bad_eff == 0 && std::fabs(ours_pts.front().efficiency - 1.0) <= 1e-7,
                fmt::format("{} bin: efficiency = 1 at the theta_L position ({} realizations off)", name, bad_eff));
        r.check(dom.efficiency.passed,
                fmt::format("{} bin: efficiency dominance at matched equity, compared {}, worst margin {:.3g}", name,
                            dom.efficiency.compared, dom.efficiency.worst_margin));
        r.check(dom.utiloquity.passed,
                fmt::format("{} bin: utiloquity dominance at matched equity, compared {}, worst margin {:.3g}", name,
                            dom.utiloquity.compared, dom.utiloquity.worst_margin));
        r.check(bad_mono == 0, fmt::format("{} bin: total fill-rate nonincreasing in theta ({} realizations off)",
                                           name, bad_mono));
    }
    const double elapsed = seconds_since(t0);
    r.check(elapsed < 600, fmt::format("runtime {:.1f} s single-threaded (limit 600 s)", elapsed));
    return r;
}

std::string poe_text(const SensitivityPoint& p)
{
    return p.poe ? fmt::format("{:.5g}", *p.poe) : std::string("undefined");
}

Result sensitivity_shapes()
{
    Result r;
    const auto t0 = Clock::now();
    const auto cfg = desk_config();
    SweepOptions opts;
    opts.points = 50;

    const std::vector<ScenarioSet> sets{generate_bin(cfg, VariabilityBin::Low), generate_bin(cfg, VariabilityBin::High)};
    const std::vector<double> supply_mult{0.5, 0.75, 1.0, 1.5, 2.0};
    const std::vector<double> capacity_mult{0.5, 0.75, 1.0, 1.25, 1.5, 2.0};
    const auto supply = sensitivity(cfg, sets, SweptQuantity::Supply, supply_mult, opts);
    const auto capacity = sensitivity(cfg, sets, SweptQuantity::Capacity, capacity_mult, opts);

    auto series = [](const std::vector<SensitivityPoint>& pts, VariabilityBin bin) {
        std::vector<const SensitivityPoint*> out;
        for (const auto& p : pts)
            if (p.bin == bin) out.push_back(&p);
        return out;
    };
    auto describe = [](const std::vector<const SensitivityPoint*>& s) {
        std::string t;
        for (const auto* p : s)
            t += fmt::format(" {}x={} (utopian {}, abundant {})", p->multiplier, poe_text(*p), p->utopian, p->abundant);
        return t;
    };

    const auto s_low = series(supply, VariabilityBin::Low);
    const auto s_high = series(supply, VariabilityBin::High);
    for (const auto& [name, s] : {std::pair{"low", s_low}, std::pair{"high", s_high}}) {
        r.note(fmt::format("supply {}:{}", name, describe(s)));
        bool defined = true, mono = true;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (!s[k]->poe) defined = false;
            if (k > 0 && s[k]->poe && s[k - 1]->poe && *s[k]->poe > *s[k - 1]->poe + 1e-9) mono = false;
        }
        r.check(defined && mono, fmt::format("{} bin: PoE defined and nonincreasing in S", name));
    }
    bool high_above = true;
    for (std::size_t k = 0; k < s_low.size(); ++k)
        if (!(s_low[k]->poe && s_high[k]->poe && *s_high[k]->poe > *s_low[k]->poe)) high_above = false;
    r.check(high_above, "high-variability PoE exceeds low-variability PoE at every supply multiplier");

    for (auto bin : {VariabilityBin::Low, VariabilityBin::High}) {
        const auto s = series(capacity, bin);
        r.note(fmt::format("capacity {}:{}", to_string(bin), describe(s)));
        bool defined = true;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (!s[k]->poe) {
                defined = false;
                continue;
            }
            if (!s[arg]->poe || *s[k]->poe < *s[arg]->poe) arg = k;
        }
        const bool interior = defined && arg > 0 && arg + 1 < s.size();
        r.check(interior, fmt::format("{} bin: capacity PoE has an interior minimum (argmin at {}x)", to_string(bin),
                                      s[arg]->multiplier));
    }
    const double elapsed = seconds_since(t0);
    r.check(elapsed < 1200, fmt::format("runtime {:.1f} s (limit 1200 s)", elapsed));
    return r;
}

Result metrics_suite()
{
    Result r;
    const auto t0 = Clock::now();
    constexpr MeasureKind kinds[] = {MeasureKind::Gini, MeasureKind::CoefficientOfVariation, MeasureKind::Variance,
                                     MeasureKind::MeanAbsoluteDeviation, MeasureKind::Range};
    bool constant_zero = true;
    for (auto k : kinds)
        for (const auto& v : {std::vector<double>{0.4, 0.4, 0.4}, std::vector<double>{7}, std::vector<double>{2, 2}})
            if (inequity(v, k).value != 0.0) constant_zero = false;
    r.check(constant_zero, "constant vectors score 0 under all five measures");

    const std::vector<double> v{1, 0};
    const double g = inequity(v, MeasureKind::Gini).value;
    const double range = inequity(v, MeasureKind::Range).value;
    const double mad = inequity(v, MeasureKind::MeanAbsoluteDeviation).value;
    const double var = inequity(v, MeasureKind::Variance).value;
    const double cv = inequity(v, MeasureKind::CoefficientOfVariation).value;
    r.check(g == 0.5 && range == 1 && mad == 0.5 && var == 0.25 && cv == 1,
            fmt::format("(1,0): Gini {}, Range {}, MAD {}, Variance {}, CV {}", g, range, mad, var, cv));

    std::mt19937_64 rng(8001);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 5000; ++k) {
        std::vector<double> e(static_cast<std::size_t>(1 + k % 50));
        for (double& x : e) x = u(rng);
        worst = std::max(worst, std::fabs(gini(e) - oracle::gini_double_sum(e)));
    }
    r.check(worst <= 1e-12, fmt::format("sorted Gini vs double sum over 5000 vectors, worst gap {:.3g}", worst));

    bool order = true;
    for (int k = 0; k < 2000; ++k) {
        std::vector<double> s(static_cast<std::size_t>(2 + k % 50));
        for (double& x : s) x = 10 * u(rng) - 5;
        const auto st = standardize_series(s).values;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j)
                if ((s[i] < s[j]) != (st[i] < st[j])) order = false;
    }
    r.check(order, "standardization preserves order over 2000 series");
    const double elapsed = seconds_since(t0);
    r.check(elapsed < 1, fmt::format("runtime {:.3f} s (limit 1 s)", elapsed));
    return r;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Result()> run;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run one criterion (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "worked examples", worked_examples},
        {2, "upper-bound oracle suite", upper_bound_suite},
        {3, "lower-bound and dominant-solution oracle suite", lower_bound_suite},
        {4, "brute-force grid oracle", grid_oracle},
        {5, "benchmark consistency", benchmark_consistency},
        {6, "desk-scale frontier reproduction", desk_frontier},
        {7, "sensitivity shapes", sensitivity_shapes},
        {8, "metrics suite", metrics_suite},
    };

    bool ok = true;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        Result res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res.ok = false;
            res.note(fmt::format("error: {}", e.what()));
        }
        fmt::print("{} criterion {}: {}\n", res.ok ? "PASS" : "FAIL", c.id, c.name);
        for (const auto& line : res.lines) fmt::print("{}\n", line);
        std::fflush(stdout);
        ok = ok && res.ok;
    }
    return ok ? 0 : 1;
}
