#pragma once

#include "mecm/dispatch.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace mecm::testing
{

class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double Uniform(double lo, double hi)
    {
        return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    int Int(int lo, int hi)
    {
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 engine_;
};

struct RandomCase
{
    DesignVector design;
    LoadProfiles profiles;
    StrategyParams strategy;
};

// A short scenario with every subsystem active at random sizes.
inline RandomCase
MakeRandomCase(Rng& rng, std::size_t hours = 168)
{
    RandomCase c;
    auto& d = c.design;
    d.windTurbines = rng.Int(0, 12);
    d.scModules = rng.Int(0, 20000);
    d.batteryPacks = rng.Int(0, 60);
    d.electrolyser_kW = rng.Uniform(0.0, 800.0);
    d.h2Tank_kg = rng.Uniform(0.0, 400.0);
    d.fuelCell_kW = rng.Uniform(0.0, 300.0);
    d.heatExchanger_kW = rng.Uniform(0.0, 200.0);
    d.hotWaterTank_L = rng.Uniform(0.0, 50000.0);
    d.inlineHeater_kW = rng.Uniform(0.0, 80.0);
    d.h2Station_kgPerH = rng.Uniform(0.0, 25.0);
    d.inverter_kW = rng.Uniform(0.0, 500.0);

    auto& p = c.profiles;
    double windScale = rng.Uniform(3.0, 14.0);
    double load = rng.Uniform(0.0, 300.0);
    double heat = rng.Uniform(0.0, 60.0);
    double h2 = rng.Uniform(0.0, 15.0);
    for (std::size_t t = 0; t < hours; ++t)
    {
        p.windSpeed_mps.push_back(windScale * rng.Uniform(0.0, 2.2));
        p.electric_kW.push_back(load * rng.Uniform(0.3, 1.7));
        p.thermal_kW.push_back(heat * rng.Uniform(0.0, 2.0));
        p.h2_kgPerH.push_back(rng.Uniform(0.0, 1.0) < 0.3 ? h2 * rng.Uniform(0.0, 2.0) : 0.0);
    }
    c.strategy.initialScFraction = rng.Uniform(0.0, 1.0);
    c.strategy.initialBatteryFraction = rng.Uniform(0.0, 1.0);
    c.strategy.initialTankFraction = rng.Uniform(0.0, 1.0);
    return c;
}

inline std::filesystem::path
TempDir(std::string const& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("mecm_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void
WriteLines(std::filesystem::path const& path, std::vector<std::string> const& lines)
{
    std::ofstream out(path);
    for (auto const& l : lines)
    {
        out << l << '\n';
    }
}

// Storage and tank limits hold at every hour, with a small numerical slack.
inline bool
StoresWithinBounds(DispatchResult const& r, SystemSpec const& spec, double tol = 1e-9)
{
    auto const& l = spec.limits;
    for (auto const& h : r.hours)
    {
        double slackSc = tol * std::max(1.0, r.scCapacity_kWh);
        double slackBat = tol * std::max(1.0, r.batteryCapacity_kWh);
        double slackH2 = tol * std::max(1.0, r.h2Capacity_kg);
        if (h.scEnergy_kWh < r.scCapacity_kWh * l.scSocMin - slackSc
            || h.scEnergy_kWh > r.scCapacity_kWh * l.scSocMax + slackSc
            || h.batteryEnergy_kWh < r.batteryCapacity_kWh * l.batterySocMin - slackBat
            || h.batteryEnergy_kWh > r.batteryCapacity_kWh * l.batterySocMax + slackBat
            || h.h2Mass_kg < r.h2Capacity_kg * l.tankSocMin - slackH2
            || h.h2Mass_kg > r.h2Capacity_kg * l.tankSocMax + slackH2)
        {
            return false;
        }
    }
    return true;
}

} // namespace mecm::testing
