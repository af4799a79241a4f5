#pragma once

#include "mecm/components.hpp"
#include "mecm/profiles.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mecm
{

// The eleven sizing decisions. The first three are unit counts.
struct DesignVector
{
    int windTurbines = 0;
    int scModules = 0;
    int batteryPacks = 0;
    double electrolyser_kW = 0.0;
    double h2Tank_kg = 0.0;
    double fuelCell_kW = 0.0;
    double heatExchanger_kW = 0.0;
    double hotWaterTank_L = 0.0;
    double inlineHeater_kW = 0.0;
    double h2Station_kgPerH = 0.0;
    double inverter_kW = 0.0;

    bool operator==(DesignVector const&) const = default;
};

inline constexpr std::size_t DesignDimensions = 11;

std::array<std::string_view, DesignDimensions> const&
DesignVariableNames();

std::array<double, DesignDimensions>
ToArray(DesignVector const& d);

// Integer fields are rounded to nearest.
DesignVector
DesignFromArray(std::span<double const> x);

// Optimised capacities reported for the island case.
DesignVector
StewartIslandReferenceDesign();

struct StorageLimits
{
    double batterySocMin = 0.2;
    double batterySocMax = 1.0;
    double scSocMin = 0.05;
    double scSocMax = 1.0;
    double tankSocMin = 0.0;
    double tankSocMax = 1.0;

    bool operator==(StorageLimits const&) const = default;
};

struct SystemSpec
{
    WindTurbineSpec turbine;
    EfficiencySpec efficiency;
    ThermalSpec thermal;
    StorageLimits limits;
    double scModule_kWh = 0.00323;
    double batteryPack_kWh = 7.5;
    StorageEfficiencyMode storageMode = StorageEfficiencyMode::DischargeOnly;

    bool operator==(SystemSpec const&) const = default;
};

void
Validate(SystemSpec const& spec);

enum class InitialStateMode
{
    Fixed,    // start from the configured fractions
    Periodic, // one warm-up pass, then restart from its final state
};

struct StrategyParams
{
    int filter1Window_h = 24;
    int filter2Window_h = 4;
    // fractions of the usable SOC range
    double initialScFraction = 0.5;
    double initialBatteryFraction = 0.5;
    // fraction of tank capacity
    double initialTankFraction = 0.5;
    InitialStateMode initialMode = InitialStateMode::Fixed;

    bool operator==(StrategyParams const&) const = default;
};

void
Validate(StrategyParams const& s);

// Hourly inputs of one simulation. Any horizon length is accepted as long as
// all four series agree; a planning run uses 8760 hours.
struct LoadProfiles
{
    std::vector<double> windSpeed_mps;
    std::vector<double> electric_kW;
    std::vector<double> thermal_kW;
    std::vector<double> h2_kgPerH;

    std::size_t size() const { return windSpeed_mps.size(); }

    static LoadProfiles
    FromSeries(
        TimeSeries const& wind,
        TimeSeries const& electric,
        TimeSeries const& thermal,
        TimeSeries const& h2);
};

void
Validate(LoadProfiles const& p);

struct HourRecord
{
    double windSpeed_mps = 0.0;
    double wind_kW = 0.0;
    double filterH2_kW = 0.0;
    double filterBattery_kW = 0.0;
    double filterSc_kW = 0.0;
    double acDemand_kW = 0.0;
    double acServed_kW = 0.0;
    double unmetElectric_kW = 0.0;
    double dcLoadServed_kW = 0.0;
    double electrolyser_kW = 0.0;   // electrical input
    double electrolyserH2_kW = 0.0; // hydrogen energy into the tank
    double fcH2_kW = 0.0;           // hydrogen energy drawn by the fuel cell
    double fcElectric_kW = 0.0;
    double fcElectricToHeater_kW = 0.0;
    double fcHeatRecovered_kW = 0.0; // through the heat exchanger
    double scCharge_kW = 0.0;
    double scDischarge_kW = 0.0;
    double batteryCharge_kW = 0.0;
    double batteryDischarge_kW = 0.0;
    double tankToStation_kW = 0.0;
    double heater_kW = 0.0;
    double heaterFromWind_kW = 0.0;
    double heaterHeat_kW = 0.0;
    double dump_kW = 0.0;
    double thermalDemand_kW = 0.0;
    double tankHeatDelivered_kW = 0.0;
    double thermalServed_kW = 0.0;
    double unmetThermal_kW = 0.0;
    double thermalDumped_kW = 0.0;
    double h2Demand_kg = 0.0;
    double h2Delivered_kg = 0.0;
    double unmetH2_kg = 0.0;
    double scEnergy_kWh = 0.0;
    double batteryEnergy_kWh = 0.0;
    double h2Mass_kg = 0.0;
    double tankTemp_C = 0.0;
};

// Column names and accessors in file order.
struct HourColumn
{
    std::string_view name;
    double HourRecord::*field;
};

std::span<HourColumn const>
HourColumns();

struct StoreSnapshot
{
    double scEnergy_kWh = 0.0;
    double batteryEnergy_kWh = 0.0;
    double h2Mass_kg = 0.0;
    double tankTemp_C = 0.0;
};

struct DispatchResult
{
    std::vector<HourRecord> hours;
    StoreSnapshot initial;
    StoreSnapshot final;
    double scCapacity_kWh = 0.0;
    double batteryCapacity_kWh = 0.0;
    double h2Capacity_kg = 0.0;
    StorageEfficiency storageEfficiency;
    double inverterEfficiency = 1.0;
    double electrolyserEfficiency = 1.0;
    double h2TankEfficiency = 1.0;
};

// Centered moving average with truncated windows at the edges.
struct FilterSplit
{
    std::vector<double> low;
    std::vector<double> high;
};

FilterSplit
LowpassDecompose(std::span<double const> signal, int window_h);

DispatchResult
SimulateYear(
    DesignVector const& design,
    LoadProfiles const& profiles,
    SystemSpec const& spec,
    StrategyParams const& strategy);

// supply: wind + discharges + fuel cell; use: load + charges + electrolyser +
// heater + dump.
double
BalanceResidual(HourRecord const& h);

bool
CheckPowerBalance(DispatchResult const& result, double tol);

inline constexpr double DeficitTolerance_kW = 1e-6;

// Percent of hours with supplied < demanded - tol.
double
Lpsp(std::span<double const> supplied, std::span<double const> demanded, double tol);

struct LpspSummary
{
    double electric = 0.0;
    double thermal = 0.0;
    double h2 = 0.0;
};

LpspSummary
ComputeLpsp(DispatchResult const& result, double tol = DeficitTolerance_kW);

struct CyclicalError
{
    double sc = 0.0;
    double battery = 0.0;
    double h2Tank = 0.0;
};

// |final - initial| / capacity per store; 0 for zero-capacity stores.
CyclicalError
CyclicalStateError(DispatchResult const& result);

// Year-level electricity accounting, all terms in kWh and non-negative:
// wind + fuel cell + stored(initial) =
//   served + inverter loss + storage loss + electrolyser + heater + dump
//   + stored(final)
struct EnergyLedger
{
    double wind = 0.0;
    double fuelCellElectric = 0.0;
    double storedInitial = 0.0;
    double acServed = 0.0;
    double inverterLoss = 0.0;
    double storageLoss = 0.0;
    double electrolyser = 0.0;
    double heater = 0.0;
    double dump = 0.0;
    double storedFinal = 0.0;

    double Residual() const;
};

EnergyLedger
ComputeEnergyLedger(DispatchResult const& result);

struct HydrogenLedger
{
    double initial_kg = 0.0;
    double produced_kg = 0.0;
    double toFuelCell_kg = 0.0;
    double toStation_kg = 0.0;
    double final_kg = 0.0;

    double Residual() const;
};

HydrogenLedger
ComputeHydrogenLedger(DispatchResult const& result);

struct DispatchTotals
{
    double wind_kWh = 0.0;
    double acDemand_kWh = 0.0;
    double acServed_kWh = 0.0;
    double thermalDemand_kWh = 0.0;
    double thermalServed_kWh = 0.0;
    double h2Demand_kg = 0.0;
    double h2Delivered_kg = 0.0;
    double dump_kWh = 0.0;
    double electrolyser_kWh = 0.0;
    double fcElectric_kWh = 0.0;
    double heater_kWh = 0.0;
};

DispatchTotals
Summarize(DispatchResult const& result);

// One row per hour with a header line of HourColumns() names.
void
WriteDispatchCsv(std::filesystem::path const& path, DispatchResult const& result);

// Reads the hourly table back. Store capacities and snapshots are not in the
// table; callers that need them re-simulate.
std::vector<HourRecord>
ReadDispatchCsv(std::filesystem::path const& path);

} // namespace mecm
