#include "foodbank/cli.hpp"

#include "foodbank/closed_form.hpp"
#include "foodbank/config.hpp"
#include "foodbank/csv.hpp"
#include "foodbank/error.hpp"
#include "foodbank/frontier.hpp"
#include "foodbank/policy.hpp"
#include "foodbank/scenario.hpp"
#include "foodbank/sensitivity.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <ostream>

namespace foodbank {

namespace {

struct Options {
    std::string agencies;
    double supply = -1.0;
    double theta = -1.0;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> points;
};

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ConfigError: return kExitConfig;
    case ErrorCode::NumericalFailure:
    case ErrorCode::InvariantViolation:
    case ErrorCode::UtopianInstance:
    case ErrorCode::PreconditionViolated:
    case ErrorCode::PerfectEfficiencyImpossible:
    case ErrorCode::RejectionCapExceeded:
    case ErrorCode::InsufficientAcceptance:
    case ErrorCode::BoundsNotApplicable:
    case ErrorCode::TooFewPoints:
        return kExitSolver;
    default: return kExitValidation;
    }
}

std::string na_or(const std::optional<double>& v)
{
    return v ? format_number(*v) : "NA";
}

std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

std::string input_hash(const Options& o, const std::string& file_text)
{
    return fnv1a_hex(fmt::format("{}\n{}\n{}", file_text, format_number(o.supply), format_number(o.theta)));
}

int cmd_bounds(const Options& o, std::ostream& out)
{
    const auto inst = read_agency_csv(o.agencies, o.supply);
    const auto ci = to_concise(inst);
    const auto sb = spectrum(ci);
    const auto& cls = sb.classification;
    const auto& de = sb.dominant_efficient;

    fmt::print(out, "agencies      {}\n", inst.size());
    fmt::print(out, "supply        {}\n", format_number(inst.supply));
    fmt::print(out, "class         {}, {}\n", cls.utopian ? "utopian" : "non-utopian",
               cls.supply_constrained ? "supply-constrained" : "not supply-constrained");
    fmt::print(out, "theta_L       {}\n", sb.theta_lower ? format_number(*sb.theta_lower) : "not applicable");
    fmt::print(out, "theta_U       {}\n", sb.theta_upper ? format_number(*sb.theta_upper) : "not applicable");
    fmt::print(out, "beta_EQ       {}\n", format_number(sb.perfect_equity.beta_eq));
    fmt::print(out, "xi            {}\n", format_number(de.xi));
    fmt::print(out, "{:<12}  {:>14}  {:>14}\n", "agency", "beta_EF", "beta_max");
    for (std::size_t i = 0; i < inst.size(); ++i)
        fmt::print(out, "{:<12}  {:>14.6f}  {:>14.6f}\n", inst.agencies[i].id, de.beta_ef[i], ci.max_fill_rate[i]);
    if (cls.utopian) fmt::print(out, "note: utopian instance, perfect equity is also perfectly efficient\n");
    if (sb.degenerate()) fmt::print(out, "note: degenerate spectrum, theta_L equals theta_U\n");

    fmt::print(out, "\ntheta_lower={}\n", na_or(sb.theta_lower));
    fmt::print(out, "theta_upper={}\n", na_or(sb.theta_upper));
    fmt::print(out, "beta_eq={}\n", format_number(sb.perfect_equity.beta_eq));
    fmt::print(out, "beta_ef={}\n", join(de.beta_ef));
    fmt::print(out, "xi={}\n", format_number(de.xi));
    fmt::print(out, "utopian={}\n", cls.utopian);
    fmt::print(out, "supply_constrained={}\n", cls.supply_constrained);
    fmt::print(out, "degenerate={}\n", sb.degenerate());
    return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out)
{
    const std::string text = read_file(o.agencies);
    const auto inst = parse_agency_csv(text, o.supply, o.agencies);
    const auto ci = to_concise(inst);
    const auto sb = spectrum(ci);
    const auto alloc = solve_policy(ci, sb, o.theta);

    OutputStamp stamp;
    stamp.config_hash = input_hash(o, text);
    stamp.extra = {{"theta", format_number(o.theta)}};
    const auto csv = format_allocation_csv(inst, alloc.shipped, stamp);
    if (o.out.empty()) {
        out << csv;
    } else {
        write_file_atomic(o.out, csv);
        fmt::print(out, "wrote {}\n", o.out);
    }
    return kExitOk;
}

struct Prepared {
    RunConfig run;
    ScenarioConfig scenario;
    OutputStamp stamp;
    std::filesystem::path dir;
};

Prepared prepare(const Options& o)
{
    if (o.config.empty()) throw Error(ErrorCode::ConfigError, "--config is required");
    Prepared p;
    p.run = load_config(o.config);
    if (o.seed) p.run.seed = *o.seed;
    if (o.points) p.run.points = *o.points;
    if (p.run.points < 1) throw Error(ErrorCode::ConfigError, "--points must be >= 1");
    p.scenario = scenario_config(p.run);
    p.dir = o.out.empty() ? p.run.output_dir : std::filesystem::path(o.out);
    p.stamp.config_hash = p.run.hash;
    p.stamp.seed = std::to_string(p.run.seed);
    p.stamp.extra = {{"points", std::to_string(p.run.points)}, {"count", std::to_string(p.run.count)}};
    return p;
}

std::vector<ScenarioSet> both_bins(const ScenarioConfig& sc)
{
    return {generate_bin(sc, VariabilityBin::Low), generate_bin(sc, VariabilityBin::High)};
}

int cmd_scenarios(const Options& o, std::ostream& out)
{
    const auto p = prepare(o);
    for (const auto& set : both_bins(p.scenario)) {
        const auto path = p.dir / fmt::format("scenarios_{}.csv", to_string(set.bin));
        write_file_atomic(path, format_scenario_csv(set, p.scenario, p.stamp));
        fmt::print(out, "wrote {} ({} realizations, {} draws)\n", path.string(), set.demands.size(), set.stats.generated);
    }
    return kExitOk;
}

std::vector<FrontierSeries> run_frontiers(const Prepared& p)
{
    SweepOptions opts;
    opts.points = p.run.points;
    std::vector<FrontierSeries> series;
    for (const auto& set : both_bins(p.scenario)) {
        const auto instances = build_instances(set, p.scenario);
        for (auto model : {ModelTag::Ours, ModelTag::Benchmark})
            series.push_back({model, set.bin, sweep(instances, model, opts)});
    }
    return series;
}

int cmd_frontier(const Options& o, std::ostream& out)
{
    const auto p = prepare(o);
    const auto series = run_frontiers(p);
    const auto path = p.dir / "frontier.csv";
    write_file_atomic(path, format_frontier_csv(series, p.stamp));
    fmt::print(out, "wrote {}\n", path.string());
    return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out)
{
    const auto p = prepare(o);
    const auto series = run_frontiers(p);
    std::string report = stamp_header(p.stamp);
    bool all = true;
    for (std::size_t k = 0; k + 1 < series.size(); k += 2) {
        const auto& ours = series[k];
        const auto& bench = series[k + 1];
        const auto r = check_dominance(ours.points, bench.points, p.run.dominance_tolerance);
        all = all && r.passed();
        report += fmt::format("{} efficiency dominance: {} (compared {}, worst margin {} at equity {})\n",
                              to_string(ours.bin), r.efficiency.passed ? "PASS" : "FAIL", r.efficiency.compared,
                              format_number(r.efficiency.worst_margin), format_number(r.efficiency.worst_equity));
        report += fmt::format("{} utiloquity dominance: {} (compared {}, worst margin {} at equity {})\n",
                              to_string(ours.bin), r.utiloquity.passed ? "PASS" : "FAIL", r.utiloquity.compared,
                              format_number(r.utiloquity.worst_margin), format_number(r.utiloquity.worst_equity));
    }
    report += fmt::format("overall: {}\n", all ? "PASS" : "FAIL");
    write_file_atomic(p.dir / "frontier.csv", format_frontier_csv(series, p.stamp));
    write_file_atomic(p.dir / "compare_report.txt", report);
    out << report;
    return kExitOk;
}

int cmd_sensitivity(const Options& o, std::ostream& out)
{
    const auto p = prepare(o);
    const auto sets = both_bins(p.scenario);
    SweepOptions opts;
    opts.points = p.run.points;
    const auto supply = sensitivity(p.scenario, sets, SweptQuantity::Supply, p.run.supply_multipliers, opts);
    const auto capacity = sensitivity(p.scenario, sets, SweptQuantity::Capacity, p.run.capacity_multipliers, opts);

    write_file_atomic(p.dir / "sensitivity_supply.csv", format_sensitivity_csv(supply, p.stamp));
    write_file_atomic(p.dir / "sensitivity_capacity.csv", format_sensitivity_csv(capacity, p.stamp));
    auto all = supply;
    all.insert(all.end(), capacity.begin(), capacity.end());
    const auto summary = format_sensitivity_summary(all, p.stamp);
    write_file_atomic(p.dir / "sensitivity_summary.csv", summary);
    out << summary;
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Food-bank donation allocation: policy bounds, solves and frontier experiments", "foodbank"};
    app.require_subcommand(1);
    Options o;

    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("--agencies", o.agencies, "agency CSV (id,capacity,demand[,ratio])")->required();
        sub->add_option("--supply", o.supply, "supply S in pounds")->required();
    };
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON run configuration")->required();
        sub->add_option("--out", o.out, "output directory (overrides output_dir)");
        sub->add_option("--seed", o.seed, "scenario seed override");
        sub->add_option("--points", o.points, "sweep points override");
    };

    auto* bounds = app.add_subcommand("bounds", "print theta_L, theta_U, beta_EQ, beta_EF");
    add_instance(bounds);
    auto* solve = app.add_subcommand("solve", "solve the fill-rate model at one theta");
    add_instance(solve);
    solve->add_option("--theta", o.theta, "penalty theta >= 0")->required();
    solve->add_option("--out", o.out, "allocation CSV path (default stdout)");
    auto* scenarios = app.add_subcommand("scenarios", "generate low and high variability demand sets");
    add_config(scenarios);
    auto* frontier = app.add_subcommand("frontier", "sweep both models on both bins");
    add_config(frontier);
    auto* compare = app.add_subcommand("compare", "frontiers plus the dominance report");
    add_config(compare);
    auto* sens = app.add_subcommand("sensitivity", "price of equity against supply and capacity");
    add_config(sens);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "usage error: {}\n", e.what());
        return kExitValidation;
    }

    try {
        if (*solve && !(o.theta >= 0.0)) {
            fmt::print(err, "usage error: --theta must be >= 0\n");
            return kExitValidation;
        }
        if ((*bounds || *solve) && !(o.supply >= 0.0)) {
            fmt::print(err, "usage error: --supply must be >= 0\n");
            return kExitValidation;
        }
        if (*bounds) return cmd_bounds(o, out);
        if (*solve) return cmd_solve(o, out);
        if (*scenarios) return cmd_scenarios(o, out);
        if (*frontier) return cmd_frontier(o, out);
        if (*compare) return cmd_compare(o, out);
        if (*sens) return cmd_sensitivity(o, out);
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitSolver;
    }
    return kExitOk;
}

} // namespace foodbank
