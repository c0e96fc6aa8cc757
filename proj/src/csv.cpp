#include "foodbank/csv.hpp"

#include "foodbank/error.hpp"
#include "foodbank/metrics.hpp"
#include "foodbank/rng.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

namespace foodbank {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Line {
    std::size_t number;
    std::string_view text;
};

// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<Line> data_lines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        const auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++number;
        const auto t = trim(raw);
        if (!t.empty() && t.front() != '#') out.push_back({number, raw});
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s)
{
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
    return v;
}

[[noreturn]] void row_error(ErrorCode code, std::string_view source, std::size_t line, const std::string& msg)
{
    throw Error(code, fmt::format("{} line {}: {}", source, line, msg));
}

} // namespace

std::string format_number(double v)
{
    return fmt::format("{}", v);
}

std::string stamp_header(const OutputStamp& stamp)
{
    std::string out;
    out += fmt::format("# foodbank {}\n", kVersion);
    out += fmt::format("# config_hash={}\n", stamp.config_hash);
    out += fmt::format("# seed={}\n", stamp.seed);
    out += fmt::format("# rng={}/v{}\n", kRngName, kRngVersion);
    out += fmt::format("# conventions={}\n", kConventions);
    for (const auto& [k, v] : stamp.extra) out += fmt::format("# {}={}\n", k, v);
    return out;
}

std::map<std::string, std::string> header_fields(std::string_view text)
{
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        out[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp, ec);
            throw Error(ErrorCode::IoError, "failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot rename into " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance parse_agency_csv(std::string_view text, double supply, std::string_view source)
{
    const auto lines = data_lines(text);
    if (lines.empty()) throw Error(ErrorCode::ParseError, std::string(source) + ": no header row");

    const auto header = split(lines.front().text);
    int col_id = -1, col_cap = -1, col_dem = -1, col_ratio = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto h = header[c];
        if (h == "id") col_id = static_cast<int>(c);
        else if (h == "capacity") col_cap = static_cast<int>(c);
        else if (h == "demand") col_dem = static_cast<int>(c);
        else if (h == "ratio") col_ratio = static_cast<int>(c);
        else row_error(ErrorCode::ParseError, source, lines.front().number, fmt::format("unknown column '{}'", h));
    }
    if (col_id < 0 || col_dem < 0)
        row_error(ErrorCode::ParseError, source, lines.front().number, "header needs id and demand columns");
    if (col_cap < 0 && col_ratio < 0)
        row_error(ErrorCode::ParseError, source, lines.front().number, "header needs a capacity or ratio column");

    Instance inst;
    inst.supply = supply;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& ln = lines[k];
        const auto cells = split(ln.text);
        if (cells.size() != header.size())
            row_error(ErrorCode::ParseError, source, ln.number,
                      fmt::format("expected {} fields, found {}", header.size(), cells.size()));
        const std::string id(cells[col_id]);
        if (id.empty()) row_error(ErrorCode::ParseError, source, ln.number, "empty id");

        const auto demand = parse_double(cells[col_dem]);
        if (!demand) row_error(ErrorCode::ParseError, source, ln.number, "demand is not a number");
        if (!(*demand > 0.0) || !std::isfinite(*demand))
            row_error(ErrorCode::NonPositiveDemand, source, ln.number, fmt::format("demand of {} must be > 0", id));

        const std::string_view cap_cell = col_cap >= 0 ? cells[col_cap] : std::string_view{};
        const std::string_view ratio_cell = col_ratio >= 0 ? cells[col_ratio] : std::string_view{};
        if (cap_cell.empty() == ratio_cell.empty())
            row_error(ErrorCode::ParseError, source, ln.number,
                      fmt::format("{} needs exactly one of capacity or ratio", id));

        double capacity = 0.0;
        if (!cap_cell.empty()) {
            const auto c = parse_double(cap_cell);
            if (!c) row_error(ErrorCode::ParseError, source, ln.number, "capacity is not a number");
            capacity = *c;
        } else {
            const auto r = parse_double(ratio_cell);
            if (!r) row_error(ErrorCode::ParseError, source, ln.number, "ratio is not a number");
            capacity = *r * *demand;
        }
        if (capacity < 0.0 || !std::isfinite(capacity))
            row_error(ErrorCode::NegativeCapacity, source, ln.number, fmt::format("capacity of {} must be >= 0", id));
        for (const auto& a : inst.agencies)
            if (a.id == id) row_error(ErrorCode::DuplicateId, source, ln.number, fmt::format("duplicate id {}", id));
        inst.agencies.push_back({id, capacity, *demand});
    }
    return validate_instance(std::move(inst));
}

Instance read_agency_csv(const std::filesystem::path& path, double supply)
{
    return parse_agency_csv(read_file(path), supply, path.string());
}

std::string format_allocation_csv(const Instance& instance, const std::vector<double>& shipped,
                                  const OutputStamp& stamp)
{
    const auto ev = evaluate(instance, shipped, 0.0);
    std::string out = stamp_header(stamp);
    out += fmt::format("# supply={}\n", format_number(instance.supply));
    out += "id,capacity,demand,shipped,fill_rate,utilization,deviation,efficiency,equity,utiloquity\n";

    double top = 0.0;
    for (std::size_t i = 0; i < instance.size(); ++i) top = std::max(top, shipped[i] / instance.agencies[i].demand);
    double total = 0.0;
    for (std::size_t i = 0; i < instance.size(); ++i) {
        const auto& a = instance.agencies[i];
        const double beta = shipped[i] / a.demand;
        const std::string util = a.capacity > 0.0 ? format_number(shipped[i] / a.capacity) : "NA";
        out += fmt::format("{},{},{},{},{},{},{},,,\n", a.id, format_number(a.capacity), format_number(a.demand),
                           format_number(shipped[i]), format_number(beta), util, format_number(top - beta));
        total += shipped[i];
    }
    out += fmt::format("TOTAL,,,{},,,,{},{},{}\n", format_number(total), format_number(ev.efficiency),
                       format_number(ev.equity), format_number(ev.utiloquity));
    return out;
}

AllocationRecord parse_allocation_csv(std::string_view text)
{
    const auto fields = header_fields(text);
    const auto it = fields.find("supply");
    if (it == fields.end()) throw Error(ErrorCode::ParseError, "allocation file has no supply line");
    const auto supply = parse_double(it->second);
    if (!supply) throw Error(ErrorCode::ParseError, "allocation supply is not a number");

    const auto lines = data_lines(text);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "allocation file is empty");
    AllocationRecord rec;
    rec.instance.supply = *supply;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto cells = split(lines[k].text);
        if (cells.size() != 10) row_error(ErrorCode::ParseError, "allocation", lines[k].number, "expected 10 fields");
        auto num = [&](std::size_t c) {
            const auto v = parse_double(cells[c]);
            if (!v) row_error(ErrorCode::ParseError, "allocation", lines[k].number, "bad number");
            return *v;
        };
        if (cells[0] == "TOTAL") {
            rec.efficiency = num(7);
            rec.equity = num(8);
            rec.utiloquity = num(9);
            continue;
        }
        rec.instance.agencies.push_back({std::string(cells[0]), num(1), num(2)});
        rec.shipped.push_back(num(3));
    }
    rec.instance = validate_instance(std::move(rec.instance));
    return rec;
}

std::string format_scenario_csv(const ScenarioSet& set, const ScenarioConfig& config, const OutputStamp& stamp)
{
    std::string out = stamp_header(stamp);
    out += fmt::format("# bin={}\n", to_string(set.bin));
    out += fmt::format("# bin_ratio={}\n",
                       format_number(set.bin == VariabilityBin::Low ? config.low_bin_ratio : config.high_bin_ratio));
    out += fmt::format("# reference_sd={}\n", format_number(set.reference_sd));
    out += fmt::format("# dispersion=sample sd of (v_i-D_i)*mean(D)/D_i, slack {}\n",
                       format_number(config.dispersion_slack));
    out += fmt::format("# generated={}\n", set.stats.generated);
    out += fmt::format("# rejected_dispersion={}\n", set.stats.rejected_dispersion);
    out += fmt::format("# rejected_utopian={}\n", set.stats.rejected_utopian);
    out += fmt::format("# rejected_unconstrained={}\n", set.stats.rejected_unconstrained);
    out += "realization";
    for (std::size_t i = 0; i < config.nominal_demands.size(); ++i)
        out += "," + (config.agency_ids.empty() ? "a" + std::to_string(i + 1) : config.agency_ids[i]);
    out += "\n";
    for (std::size_t r = 0; r < set.demands.size(); ++r) {
        out += std::to_string(r);
        for (double d : set.demands[r]) out += "," + format_number(d);
        out += "\n";
    }
    return out;
}

namespace {

std::string frontier_row(const FrontierPoint& p, VariabilityBin bin, const std::array<double, 4>& std_equity)
{
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}", to_string(p.model), to_string(bin), p.grid_position,
                       format_number(p.parameter), format_number(p.efficiency), format_number(p.equity),
                       format_number(p.utiloquity), p.realizations, format_number(std_equity[0]),
                       format_number(std_equity[1]), format_number(std_equity[2]), format_number(std_equity[3]));
}

constexpr std::string_view kFrontierColumns =
    "model,bin,grid_position,param_value,efficiency,equity,utiloquity,n_realizations,"
    "equity_cv,equity_variance,equity_mad,equity_range";

std::vector<std::array<double, 4>> standardized_columns(const std::vector<FrontierPoint>& pts)
{
    std::vector<std::array<double, 4>> cols(pts.size());
    for (std::size_t m = 0; m < 4; ++m) {
        const auto eq = standardized_equity(pts, m);
        for (std::size_t k = 0; k < pts.size(); ++k) cols[k][m] = eq[k];
    }
    return cols;
}

} // namespace

std::string format_frontier_csv(const std::vector<FrontierSeries>& series, const OutputStamp& stamp)
{
    std::string out = stamp_header(stamp);
    out += kFrontierColumns;
    out += "\n";
    for (const auto& s : series) {
        const auto cols = standardized_columns(s.points);
        for (std::size_t k = 0; k < s.points.size(); ++k) out += frontier_row(s.points[k], s.bin, cols[k]) + "\n";
    }
    return out;
}

std::string format_sensitivity_csv(const std::vector<SensitivityPoint>& points, const OutputStamp& stamp)
{
    std::string out = stamp_header(stamp);
    out += kFrontierColumns;
    out += ",multiplier,poe\n";
    for (const auto& sp : points) {
        const auto cols = standardized_columns(sp.frontier);
        const std::string poe = sp.poe ? format_number(*sp.poe) : "NA";
        for (std::size_t k = 0; k < sp.frontier.size(); ++k)
            out += fmt::format("{},{},{}\n", frontier_row(sp.frontier[k], sp.bin, cols[k]),
                               format_number(sp.multiplier), poe);
    }
    return out;
}

std::string format_sensitivity_summary(const std::vector<SensitivityPoint>& points, const OutputStamp& stamp)
{
    std::string out = stamp_header(stamp);
    out += "quantity,bin,multiplier,poe,n_realizations,n_utopian,n_abundant,flagged\n";
    for (const auto& sp : points)
        out += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(sp.quantity), to_string(sp.bin),
                           format_number(sp.multiplier), sp.poe ? format_number(*sp.poe) : "NA", sp.realizations,
                           sp.utopian, sp.abundant, sp.flagged() ? "true" : "false");
    return out;
}

} // namespace foodbank
