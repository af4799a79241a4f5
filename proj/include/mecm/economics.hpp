#pragma once

#include "mecm/dispatch.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mecm
{

// One row of the equipment cost table, in US$ per unit of the design
// variable (per turbine, per module, per kW, per kg, per litre ...).
struct ComponentSpec
{
    std::string name;
    std::string unitSize;
    double capitalCost = 0.0;
    double replacementCost = 0.0;
    double omCost = 0.0; // per unit per year
    double efficiency = 1.0;
    int lifetime_years = 1;

    bool operator==(ComponentSpec const&) const = default;
};

void
Validate(ComponentSpec const& spec);

// Order matches the design vector.
enum class Equipment
{
    WindTurbine,
    ScModule,
    BatteryPack,
    Electrolyser,
    H2Tank,
    FuelCell,
    HeatExchanger,
    HotWaterTank,
    InlineHeater,
    H2Station,
    Inverter,
};

inline constexpr std::size_t EquipmentCount = 11;

using ComponentTable = std::array<ComponentSpec, EquipmentCount>;

ComponentTable
DefaultComponentTable();

std::string_view
EquipmentKey(Equipment e);

struct Tariffs
{
    double electricity_nzdPerKWh = 0.26;
    double hotWater_nzdPerL = 0.0077;
    double h2_nzdPerKg = 8.91;

    bool operator==(Tariffs const&) const = default;
};

struct EconomicParams
{
    double discountRate = 0.06;
    int horizon_years = 20;
    double nzdPerUsd = 1.52;
    Tariffs tariffs;

    bool operator==(EconomicParams const&) const = default;
};

void
Validate(EconomicParams const& econ);

double
Crf(double rate, int years);

// Single payment present worth, 1 / (1 + d)^y.
double
Sppw(double rate, double years);

// Replacement installs strictly before the horizon.
std::vector<int>
ReplacementYears(int lifetime, int horizon);

// Present worth of the salvage credit per unit at the horizon.
double
SalvageValue(ComponentSpec const& spec, int horizon, double rate);

double
ComponentNpc(double units, ComponentSpec const& spec, EconomicParams const& econ);

struct ComponentCost
{
    Equipment equipment = Equipment::WindTurbine;
    double units = 0.0;
    double capital = 0.0;
    double replacement = 0.0; // present worth
    double om = 0.0;          // present worth
    double salvage = 0.0;     // present worth, credited
    double npc = 0.0;
};

struct CostReport
{
    std::array<ComponentCost, EquipmentCount> components;
    double totalNpc = 0.0;
    double annualized = 0.0;
};

CostReport
TotalNpc(DesignVector const& design, ComponentTable const& table, EconomicParams const& econ);

double
Annualize(double totalNpc, EconomicParams const& econ);

enum class Carrier
{
    Electricity,
    Heat,
    Hydrogen,
};

// Per-carrier shares of each component's cost, derived from a year of flows.
struct CarrierShares
{
    std::array<std::array<double, 3>, EquipmentCount> share{};
};

CarrierShares
AttributeCarriers(std::span<HourRecord const> hours);

struct LevelizedCosts
{
    // NZ$; std::nullopt flags a carrier with cost but no served quantity
    std::optional<double> total_perKWh;
    std::optional<double> electricity_perKWh;
    std::optional<double> hotWater_perL;
    std::optional<double> h2_perKg;
    std::array<double, 3> attributedAnnual_usd{};
    double servedElectricity_kWh = 0.0;
    double servedHeat_kWh = 0.0;
    double servedHotWater_L = 0.0;
    double servedH2_kg = 0.0;
};

// Served quantities are scaled to one year when the horizon is shorter or
// longer than 8760 h.
LevelizedCosts
ComputeLevelizedCosts(
    CostReport const& report,
    std::span<HourRecord const> hours,
    ThermalSpec const& thermal,
    EconomicParams const& econ);

struct FinancialMetrics
{
    double dpp_years = 0.0; // +inf when never paid back
    double profitabilityIndex = 0.0;
    std::optional<double> irr;
};

double
NetPresentValue(std::span<double const> cashflows, double rate);

// Bisection on [-0.99, 10]; throws IrrUndefined without a sign change.
double
InternalRateOfReturn(std::span<double const> cashflows);

// cashflows[0] is the (negative) investment.
FinancialMetrics
ComputeFinancialMetrics(std::span<double const> cashflows, double rate);

// Yearly project cashflows in US$ (year 0 = capital) with revenue from the
// configured tariffs applied to the served quantities.
std::vector<double>
ProjectCashflows(
    CostReport const& report,
    ComponentTable const& table,
    LevelizedCosts const& served,
    EconomicParams const& econ);

} // namespace mecm
