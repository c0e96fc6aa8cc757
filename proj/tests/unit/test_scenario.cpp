#include <doctest.h>

#include "foodbank/closed_form.hpp"
#include "foodbank/error.hpp"
#include "foodbank/scenario.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace foodbank;
using doctest::Approx;

namespace {

ScenarioConfig small_config(std::size_t count)
{
    SynthesisOptions o;
    o.agencies = 8;
    o.supply = 50000;
    o.count = count;
    o.seed = 3;
    o.scenario_seed = 4;
    return synthesize_config(o);
}

} // namespace

TEST_CASE("truncated normal sampler")
{
    CounterRng r(1, 0);
    CHECK(sample_truncated_normal(5.0, 0.0, 1.0, r) == 5.0);
    for (int i = 0; i < 1000; ++i) CHECK(sample_truncated_normal(100, 10, 0, r) > 0);
    CHECK_THROWS_AS(sample_truncated_normal(1.0, -1.0, 0.0, r), Error);
    CHECK_THROWS_WITH(sample_truncated_normal(-100.0, 1.0, 0.0, r), doctest::Contains("RejectionCapExceeded"));
}

TEST_CASE("truncated normal mean matches the analytic value")
{
    struct Case { double mu, sd, lower; };
    for (const auto c : {Case{10, 5, 1}, Case{2, 3, 1}, Case{0, 1, -0.5}}) {
        CounterRng r(9, 77);
        const int n = 100000;
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = sample_truncated_normal(c.mu, c.sd, c.lower, r);
            sum += v;
            sq += v * v;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sq / n - mean * mean) / n);
        CHECK(std::fabs(mean - oracle::truncated_normal_mean(c.mu, c.sd, c.lower)) < 3 * se);
    }
}

TEST_CASE("reference sd and dispersion statistic")
{
    CHECK(reference_sd({2, 4, 4, 4, 5, 5, 7, 9}) == Approx(2));
    const std::vector<double> nom{10, 20, 30};
    CHECK(dispersion_statistic(nom, nom) == 0);
    // shifting each agency by the same relative amount keeps the statistic at 0
    CHECK(dispersion_statistic({11, 22, 33}, nom) == Approx(0).scale(1));
    // deviations scaled to the mean: (1,-1,0)*20/D = (2,-1,0); sample sd
    CHECK(dispersion_statistic({11, 19, 30}, nom) == Approx(std::sqrt(7.0 / 3.0)));
}

TEST_CASE("config validation")
{
    auto c = small_config(10);
    c.capacity_ratios[0] = 1.5;
    CHECK_THROWS_AS(generate_bin(c, VariabilityBin::Low), Error);
    c = small_config(10);
    c.count = 0;
    CHECK_THROWS_AS(generate_bin(c, VariabilityBin::Low), Error);
    c = small_config(10);
    c.nominal_demands.pop_back();
    CHECK_THROWS_AS(validate_config(c), Error);
}

TEST_CASE("generation is deterministic and respects the bin predicates")
{
    const auto c = small_config(200);
    const double sigma = reference_sd(c.nominal_demands);
    for (auto bin : {VariabilityBin::Low, VariabilityBin::High}) {
        const auto a = generate_bin(c, bin);
        const auto b = generate_bin(c, bin);
        CHECK(a.demands == b.demands);
        CHECK(a.stats.generated == b.stats.generated);
        REQUIRE(a.demands.size() == 200);
        for (const auto& v : a.demands) {
            const double stat = dispersion_statistic(v, c.nominal_demands);
            if (bin == VariabilityBin::Low) CHECK(stat <= 0.2 * sigma * 1.05);
            else CHECK(stat >= 2.8 * sigma * 0.95);
            for (double d : v) CHECK(d > 0);
        }
        for (const auto& in : build_instances(a, c)) {
            const auto cls = classify(to_concise(in));
            CHECK_FALSE(cls.utopian);
            CHECK(cls.supply_constrained);
            CHECK(in.supply == c.supply);
        }
    }
}

TEST_CASE("different seeds give different sets")
{
    auto c = small_config(20);
    const auto a = generate_bin(c, VariabilityBin::High);
    c.seed += 1;
    CHECK(generate_bin(c, VariabilityBin::High).demands != a.demands);
}

TEST_CASE("high bin is more dispersed than low bin")
{
    const auto c = small_config(100);
    const auto lo = generate_bin(c, VariabilityBin::Low);
    const auto hi = generate_bin(c, VariabilityBin::High);
    double max_low = 0.0, min_high = 1e300;
    for (const auto& v : lo.demands) max_low = std::max(max_low, dispersion_statistic(v, c.nominal_demands));
    for (const auto& v : hi.demands) min_high = std::min(min_high, dispersion_statistic(v, c.nominal_demands));
    CHECK(min_high > max_low);
}

TEST_CASE("low-bin means stay within 2% of nominal")
{
    const auto c = small_config(1000);
    const auto set = generate_bin(c, VariabilityBin::Low);
    for (std::size_t i = 0; i < c.nominal_demands.size(); ++i) {
        double m = 0.0;
        for (const auto& v : set.demands) m += v[i];
        m /= static_cast<double>(set.demands.size());
        CHECK(std::fabs(m / c.nominal_demands[i] - 1.0) < 0.02);
    }
}

TEST_CASE("insufficient acceptance")
{
    // supply far above demand: every draw is unconstrained
    auto c = small_config(5);
    c.supply *= 100;
    CHECK_THROWS_WITH(generate_bin(c, VariabilityBin::Low), doctest::Contains("InsufficientAcceptance"));
}

TEST_CASE("build_instance and headcounts")
{
    ScenarioConfig c;
    c.nominal_demands = {10, 20};
    c.capacity_ratios = {1, 1};
    c.supply = 7;
    const auto in = build_instance({10, 20}, c);
    const auto ci = to_concise(in);
    CHECK(ci.effective_demand == std::vector<double>{10, 20});
    CHECK(ci.max_fill_rate == std::vector<double>{1, 1});
    CHECK(in.agencies[1].id == "a2");
    CHECK(demand_from_headcount(100) == Approx(120));
    CHECK(demand_from_headcount(100, 30) == Approx(3600));
}

TEST_CASE("synthesized configuration")
{
    SynthesisOptions o;
    const auto c = synthesize_config(o);
    CHECK(c.nominal_demands.size() == 34);
    CHECK(c.supply == 2838584);
    CHECK(c.agency_ids.front() == "agency_01");
    CHECK(c.agency_ids.back() == "agency_34");
    for (double r : c.capacity_ratios) {
        CHECK(r >= 0.3);
        CHECK(r <= 0.9);
    }
    const auto nominal = classify(to_concise(build_instance(c.nominal_demands, c)));
    CHECK_FALSE(nominal.utopian);
    CHECK(nominal.supply_constrained);
    CHECK(synthesize_config(o).nominal_demands == c.nominal_demands);
}
