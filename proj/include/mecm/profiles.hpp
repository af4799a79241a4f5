#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mecm
{

inline constexpr std::size_t HoursPerYear = 8760;
inline constexpr std::size_t HoursPerDay = 24;
inline constexpr std::size_t DaysPerYear = 365;
inline constexpr std::array<std::size_t, 12> DaysPerMonth{
    31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

enum class Unit
{
    Kilowatt,
    MetrePerSecond,
    KilogramPerHour,
    LitrePerHour,
};

std::string_view ToString(Unit unit);
Unit UnitFromString(std::string_view text);

// One non-leap year of hourly values. Length and sign are validated on
// construction, so any TimeSeries in hand is well formed.
class TimeSeries
{
  public:
    TimeSeries(std::vector<double> values, Unit unit, std::string label = {});

    static TimeSeries Constant(double value, Unit unit, std::string label = {});

    std::span<double const> values() const { return values_; }
    std::vector<double> const& data() const { return values_; }
    Unit unit() const { return unit_; }
    std::string const& label() const { return label_; }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double sum() const;

  private:
    std::vector<double> values_;
    Unit unit_;
    std::string label_;
};

// Reads one value per line. A non-numeric first line is treated as a header
// and skipped; blank lines are ignored. Parsing never depends on the locale.
TimeSeries
LoadHourlySeries(std::filesystem::path const& path, Unit unit);

void
WriteHourlySeries(std::filesystem::path const& path, TimeSeries const& series);

using MonthlyDailyProfile = std::array<std::array<double, HoursPerDay>, 12>;

// Entry [m][h] is the mean over every day of month m at hour-of-day h.
MonthlyDailyProfile
MonthlyMeanDailyProfile(TimeSeries const& series);

std::size_t
MonthOfHour(std::size_t hourOfYear);

struct UniformWindow
{
    int startHour = 0;
    int endHour = 0;

    bool operator==(UniformWindow const&) const = default;
};

// Normal density discretized over the window hours and renormalized.
struct NormalWindow
{
    double meanHour = 0.0;
    double sdHours = 1.0;
    int startHour = 0;
    int endHour = 0;

    bool operator==(NormalWindow const&) const = default;
};

using RefuelWindow = std::variant<UniformWindow, NormalWindow>;

struct VehicleClass
{
    std::string name;
    int count = 0;
    double tankCapacity_kg = 1.0;
    int refuelPeriod_days = 1;
    RefuelWindow window = UniformWindow{};
    double fillFractionLow = 0.0;
    double fillFractionHigh = 1.0;

    // Mean mass dispensed per day for the whole class.
    double DailyDemand_kg() const;

    bool operator==(VehicleClass const&) const = default;
};

struct FleetSpec
{
    std::vector<VehicleClass> classes;

    bool operator==(FleetSpec const&) const = default;
};

// Throws ConfigError if the class is malformed. Window slots run from
// startHour through endHour inclusive and need startHour < endHour.
void
Validate(VehicleClass const& vc);
void
Validate(FleetSpec const& fleet);

// Ferries, light-duty vehicles, tractors and trucks of the island case.
FleetSpec
StewartIslandFleet();

// Per-hour weights (summing to 1) used to spread a class's daily demand.
std::array<double, HoursPerDay>
WindowWeights(RefuelWindow const& window);

std::array<double, HoursPerDay>
DailyH2Profile(FleetSpec const& fleet);

// Repeats the fleet's daily refuelling profile over the year [kg/h].
TimeSeries
SynthesizeH2Load(FleetSpec const& fleet);

} // namespace mecm
