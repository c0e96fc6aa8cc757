#include <doctest.h>

#include "foodbank/config.hpp"
#include "foodbank/csv.hpp"
#include "foodbank/error.hpp"
#include "foodbank/model2.hpp"

#include <filesystem>
#include <random>

#include <unistd.h>

using namespace foodbank;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::IoError;
}

std::string message_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("foodbank_io_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

constexpr const char* kMinimal = R"({"supply": 100, "agencies": {"synthetic": {"seed": 1}}, "scenario": {"seed": 9}})";

} // namespace

TEST_CASE("agency csv with capacity and ratio columns")
{
    const auto in = parse_agency_csv("id,demand,capacity,ratio\n"
                                     "# comment\n"
                                     "north,4,1,\n"
                                     "south,8,,0.625\n",
                                     5);
    REQUIRE(in.size() == 2);
    CHECK(in.agencies[0].id == "north");
    CHECK(in.agencies[0].capacity == 1);
    CHECK(in.agencies[1].capacity == 5);
    CHECK(in.supply == 5);

    const auto plain = parse_agency_csv("id,capacity,demand\na,1,4\nb,5,8\n", 5);
    CHECK(plain.agencies[1].demand == 8);
}

TEST_CASE("agency csv diagnostics name the line")
{
    auto msg = message_of([] { parse_agency_csv("id,capacity,demand\na,1,4\nb,5\n", 5, "x.csv"); });
    CHECK(msg.find("x.csv line 3") != std::string::npos);

    CHECK(code_of([] { parse_agency_csv("id,capacity,demand\na,1,0\n", 5); }) == ErrorCode::NonPositiveDemand);
    CHECK(code_of([] { parse_agency_csv("id,capacity,demand\na,-1,4\n", 5); }) == ErrorCode::NegativeCapacity);
    CHECK(code_of([] { parse_agency_csv("id,capacity,demand\na,1,4\na,2,4\n", 5); }) == ErrorCode::DuplicateId);
    CHECK(code_of([] { parse_agency_csv("id,capacity,demand\na,x,4\n", 5); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_agency_csv("id,capacity,demand,color\n", 5); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_agency_csv("id,demand,capacity,ratio\na,4,1,0.5\n", 5); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_agency_csv("", 5); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_agency_csv("id,capacity,demand\n", 5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("numbers round-trip through text")
{
    std::mt19937_64 rng(131);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 1000; ++k) {
        const double v = u(rng);
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(0.25) == "0.25");
}

TEST_CASE("allocation csv round-trips")
{
    const double c[] = {20, 50, 5}, d[] = {20, 50, 50};
    const auto in = make_instance(c, d, 50);
    const auto a = solve_model2(to_concise(in), 1.0);
    const auto text = format_allocation_csv(in, a.shipped, {"abc", "none", {}});
    const auto rec = parse_allocation_csv(text);
    CHECK(rec.shipped == a.shipped);
    CHECK(rec.instance.supply == 50);
    CHECK(rec.instance.agencies[2].capacity == 5);
    CHECK(rec.efficiency == Approx(1.0));
    const auto f = header_fields(text);
    CHECK(f.at("config_hash") == "abc");
    CHECK(f.at("rng") == "philox4x64-10/v1");
    CHECK(f.count("conventions") == 1);

    const double cz[] = {0, 5}, dz[] = {4, 8};
    const auto zero_cap = make_instance(cz, dz, 3);
    const auto t2 = format_allocation_csv(zero_cap, {0, 3}, {});
    CHECK(t2.find("a1,0,4,0,0,NA,") != std::string::npos);
    CHECK(parse_allocation_csv(t2).shipped == std::vector<double>{0, 3});
}

TEST_CASE("atomic write replaces the file and leaves no temp behind")
{
    const auto p = scratch("atomic.txt");
    write_file_atomic(p, "one");
    write_file_atomic(p, "two");
    CHECK(read_file(p) == "two");
    auto tmp = p;
    tmp += ".tmp";
    CHECK_FALSE(fs::exists(tmp));
    CHECK(code_of([&] { read_file(p.parent_path() / "missing.txt"); }) == ErrorCode::IoError);
    CHECK(code_of([&] { write_file_atomic(p / "child.txt", "x"); }) == ErrorCode::IoError);
}

TEST_CASE("config parsing")
{
    const auto cfg = parse_config(kMinimal, "/base");
    CHECK(cfg.supply == 100);
    CHECK(cfg.seed == 9);
    REQUIRE(cfg.synthetic.has_value());
    CHECK(cfg.synthetic->seed == 1);
    CHECK(cfg.count == 1000);
    CHECK(cfg.points == 50);
    CHECK(cfg.output_dir == fs::path("/base/out"));
    CHECK(cfg.hash.size() == 16);

    const auto full = parse_config(R"({"supply": 10, "agencies": {"file": "n.csv"},
        "scenario": {"seed": 3, "count": 7, "rng": "philox4x64-10/v1"}, "sweep": {"points": 5},
        "sensitivity": {"supply_multipliers": [1, 2]}, "output_dir": "res", "tolerances": {"dominance": 1e-5}})",
                                   "/b");
    CHECK(*full.agencies_file == fs::path("/b/n.csv"));
    CHECK(full.count == 7);
    CHECK(full.points == 5);
    CHECK(full.supply_multipliers == std::vector<double>{1, 2});
    CHECK(full.capacity_multipliers.size() == 6);
    CHECK(full.dominance_tolerance == 1e-5);
}

TEST_CASE("config schema errors")
{
    auto bad = [](const char* text) { return message_of([&] { parse_config(text); }); };
    CHECK(bad(R"({"agencies": {"synthetic": {"seed": 1}}, "scenario": {"seed": 9}})").find("missing key 'supply'") !=
          std::string::npos);
    CHECK(bad(R"({"supply": 1, "agencies": {"synthetic": {"seed": 1}}, "scenario": {}})")
              .find("missing key 'scenario.seed'") != std::string::npos);
    CHECK(bad(R"({"supply": 1, "agencies": {"synthetic": {"seed": 1}}, "scenario": {"seed": 1}, "extra": 1})")
              .find("unknown key 'extra'") != std::string::npos);
    CHECK(bad(R"({"supply": 1, "agencies": {"synthetic": {"seed": 1}}, "scenario": {"seed": 1, "rng": "mt"}})")
              .find("scenario.rng") != std::string::npos);
    CHECK(bad(R"({"supply": 1, "agencies": {}, "scenario": {"seed": 1}})").find("exactly one") != std::string::npos);
    CHECK(bad("{not json").find("not valid JSON") != std::string::npos);
    CHECK(code_of([] { parse_config(R"({"supply": "x", "agencies": {"file": "a"}, "scenario": {"seed": 1}})"); }) ==
          ErrorCode::ConfigError);
    CHECK(code_of([] { load_config("/nonexistent/config.json"); }) == ErrorCode::ConfigError);
}

TEST_CASE("config hash ignores key order and whitespace")
{
    const auto a = parse_config(kMinimal);
    const auto b = parse_config(R"({ "scenario": {"seed": 9},
        "agencies": {"synthetic": {"seed": 1}}, "supply": 100 })");
    CHECK(a.hash == b.hash);
    const auto c = parse_config(R"({"supply": 101, "agencies": {"synthetic": {"seed": 1}}, "scenario": {"seed": 9}})");
    CHECK(a.hash != c.hash);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("scenario config from a nominal file")
{
    const auto p = scratch("nominal.csv");
    write_file_atomic(p, "id,demand,ratio\nx,100,0.5\ny,300,0.8\n");
    const auto cfg = parse_config(R"({"supply": 150, "agencies": {"file": "nominal.csv"}, "scenario": {"seed": 4, "count": 3}})",
                                  p.parent_path());
    const auto sc = scenario_config(cfg);
    CHECK(sc.agency_ids == std::vector<std::string>{"x", "y"});
    CHECK(sc.nominal_demands == std::vector<double>{100, 300});
    CHECK(sc.capacity_ratios[1] == Approx(0.8));
    CHECK(sc.supply == 150);
    CHECK(sc.count == 3);
    CHECK(sc.seed == 4);
}
