#include "mecm/profiles.hpp"

#include "mecm/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <system_error>

#include <fmt/core.h>
#include <fmt/os.h>

namespace mecm
{

std::string_view
ToString(Unit unit)
{
    switch (unit)
    {
        case Unit::Kilowatt:
            return "kW";
        case Unit::MetrePerSecond:
            return "m/s";
        case Unit::KilogramPerHour:
            return "kg/h";
        case Unit::LitrePerHour:
            return "L/h";
    }
    return "?";
}

Unit
UnitFromString(std::string_view text)
{
    for (auto u : {Unit::Kilowatt, Unit::MetrePerSecond, Unit::KilogramPerHour,
                   Unit::LitrePerHour})
    {
        if (ToString(u) == text)
        {
            return u;
        }
    }
    throw ConfigError(fmt::format("unknown unit '{}'", text));
}

TimeSeries::TimeSeries(std::vector<double> values, Unit unit, std::string label)
    : values_(std::move(values)), unit_(unit), label_(std::move(label))
{
    if (values_.size() != HoursPerYear)
    {
        throw LengthError(
            fmt::format(
                "series '{}' has {} values, expected {}", label_,
                values_.size(), HoursPerYear),
            values_.size(), HoursPerYear);
    }
    for (std::size_t i = 0; i < values_.size(); ++i)
    {
        double v = values_[i];
        if (!std::isfinite(v) || v < 0.0)
        {
            throw ValueError(
                fmt::format(
                    "series '{}' row {}: value {} is not a finite "
                    "non-negative number",
                    label_, i + 1, v),
                i + 1);
        }
    }
}

TimeSeries
TimeSeries::Constant(double value, Unit unit, std::string label)
{
    return TimeSeries(
        std::vector<double>(HoursPerYear, value), unit, std::move(label));
}

double
TimeSeries::sum() const
{
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

namespace
{

std::string_view
Trim(std::string_view s)
{
    auto const ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
    {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool
ParseNumber(std::string_view text, double& out)
{
    if (!text.empty() && text.front() == '+')
    {
        text.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

} // namespace

TimeSeries
LoadHourlySeries(std::filesystem::path const& path, Unit unit)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError(
            fmt::format("cannot open profile file '{}'", path.string()));
    }
    std::vector<double> values;
    values.reserve(HoursPerYear);
    std::string line;
    bool first = true;
    std::size_t lineNo = 0;
    while (std::getline(in, line))
    {
        ++lineNo;
        auto text = Trim(line);
        if (text.empty())
        {
            continue;
        }
        double v = 0.0;
        if (!ParseNumber(text, v))
        {
            // nan/inf spellings parse successfully and are rejected below
            if (first)
            {
                first = false;
                continue;
            }
            throw ValueError(
                fmt::format(
                    "{}: row {} (line {}): '{}' is not a number",
                    path.string(), values.size() + 1, lineNo, text),
                values.size() + 1);
        }
        first = false;
        if (!std::isfinite(v) || v < 0.0)
        {
            throw ValueError(
                fmt::format(
                    "{}: row {} (line {}): value '{}' must be finite and "
                    "non-negative",
                    path.string(), values.size() + 1, lineNo, text),
                values.size() + 1);
        }
        values.push_back(v);
    }
    if (values.size() != HoursPerYear)
    {
        throw LengthError(
            fmt::format(
                "{}: {} records, expected {}", path.string(), values.size(),
                HoursPerYear),
            values.size(), HoursPerYear);
    }
    return TimeSeries(std::move(values), unit, path.stem().string());
}

void
WriteHourlySeries(std::filesystem::path const& path, TimeSeries const& series)
{
    auto out = fmt::output_file(path.string());
    out.print("{} [{}]\n", series.label().empty() ? "value" : series.label(),
              ToString(series.unit()));
    for (double v : series.values())
    {
        out.print("{}\n", v);
    }
}

std::size_t
MonthOfHour(std::size_t hourOfYear)
{
    std::size_t day = (hourOfYear / HoursPerDay) % DaysPerYear;
    std::size_t month = 0;
    while (day >= DaysPerMonth[month])
    {
        day -= DaysPerMonth[month];
        ++month;
    }
    return month;
}

MonthlyDailyProfile
MonthlyMeanDailyProfile(TimeSeries const& series)
{
    MonthlyDailyProfile out{};
    std::size_t hour = 0;
    for (std::size_t m = 0; m < 12; ++m)
    {
        for (std::size_t d = 0; d < DaysPerMonth[m]; ++d)
        {
            for (std::size_t h = 0; h < HoursPerDay; ++h)
            {
                out[m][h] += series[hour++];
            }
        }
        for (auto& cell : out[m])
        {
            cell /= static_cast<double>(DaysPerMonth[m]);
        }
    }
    return out;
}

double
VehicleClass::DailyDemand_kg() const
{
    return count * tankCapacity_kg * (fillFractionHigh - fillFractionLow)
        / refuelPeriod_days;
}

namespace
{

void
ValidateWindowHours(std::string const& name, int start, int end)
{
    if (start < 0 || start >= 24 || end < 0 || end >= 24)
    {
        throw ConfigError(fmt::format(
            "vehicle class '{}': refuel window hours must lie in [0, 24)",
            name));
    }
    if (start >= end)
    {
        throw ConfigError(fmt::format(
            "vehicle class '{}': refuel window is empty (start {} >= end {})",
            name, start, end));
    }
}

} // namespace

void
Validate(VehicleClass const& vc)
{
    if (vc.count < 0)
    {
        throw ConfigError(
            fmt::format("vehicle class '{}': negative count", vc.name));
    }
    if (!(vc.tankCapacity_kg > 0.0))
    {
        throw ConfigError(fmt::format(
            "vehicle class '{}': tank capacity must be positive", vc.name));
    }
    if (vc.refuelPeriod_days < 1)
    {
        throw ConfigError(fmt::format(
            "vehicle class '{}': refuel period must be at least 1 day",
            vc.name));
    }
    if (!(vc.fillFractionLow >= 0.0 && vc.fillFractionHigh <= 1.0
          && vc.fillFractionLow < vc.fillFractionHigh))
    {
        throw ConfigError(fmt::format(
            "vehicle class '{}': need 0 <= fill_low < fill_high <= 1",
            vc.name));
    }
    if (auto const* u = std::get_if<UniformWindow>(&vc.window))
    {
        ValidateWindowHours(vc.name, u->startHour, u->endHour);
    }
    else
    {
        auto const& n = std::get<NormalWindow>(vc.window);
        ValidateWindowHours(vc.name, n.startHour, n.endHour);
        if (!(n.sdHours > 0.0) || !std::isfinite(n.meanHour))
        {
            throw ConfigError(fmt::format(
                "vehicle class '{}': normal window needs sd > 0", vc.name));
        }
    }
}

void
Validate(FleetSpec const& fleet)
{
    for (auto const& vc : fleet.classes)
    {
        Validate(vc);
    }
}

FleetSpec
StewartIslandFleet()
{
    UniformWindow earlyMorning{1, 6};
    NormalWindow daytime{14.5, 2.5, 9, 20};
    return FleetSpec{{
        {"ferries", 5, 31.7, 2, earlyMorning, 0.05, 1.0},
        {"light_vehicles", 30, 1.5, 3, daytime, 0.05, 1.0},
        {"tractors", 5, 32.9, 4, earlyMorning, 0.05, 1.0},
        {"trucks", 5, 8.2, 5, earlyMorning, 0.05, 1.0},
    }};
}

std::array<double, HoursPerDay>
WindowWeights(RefuelWindow const& window)
{
    std::array<double, HoursPerDay> w{};
    if (auto const* u = std::get_if<UniformWindow>(&window))
    {
        double share = 1.0 / (u->endHour - u->startHour + 1);
        for (int h = u->startHour; h <= u->endHour; ++h)
        {
            w[h] = share;
        }
        return w;
    }
    auto const& n = std::get<NormalWindow>(window);
    double total = 0.0;
    for (int h = n.startHour; h <= n.endHour; ++h)
    {
        double z = (h - n.meanHour) / n.sdHours;
        w[h] = std::exp(-0.5 * z * z);
        total += w[h];
    }
    for (auto& x : w)
    {
        x /= total;
    }
    return w;
}

std::array<double, HoursPerDay>
DailyH2Profile(FleetSpec const& fleet)
{
    Validate(fleet);
    std::array<double, HoursPerDay> day{};
    for (auto const& vc : fleet.classes)
    {
        double mass = vc.DailyDemand_kg();
        auto weights = WindowWeights(vc.window);
        for (std::size_t h = 0; h < HoursPerDay; ++h)
        {
            day[h] += mass * weights[h];
        }
    }
    return day;
}

TimeSeries
SynthesizeH2Load(FleetSpec const& fleet)
{
    auto day = DailyH2Profile(fleet);
    std::vector<double> values(HoursPerYear);
    for (std::size_t t = 0; t < HoursPerYear; ++t)
    {
        values[t] = day[t % HoursPerDay];
    }
    return TimeSeries(std::move(values), Unit::KilogramPerHour, "h2_load");
}

} // namespace mecm
