#include "mecm/economics.hpp"

#include "mecm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/core.h>

namespace mecm
{

void
Validate(ComponentSpec const& s)
{
    if (!(s.capitalCost >= 0.0 && s.replacementCost >= 0.0 && s.omCost >= 0.0))
    {
        throw ConfigError(
            fmt::format("component '{}': costs must be >= 0", s.name));
    }
    if (s.lifetime_years < 1)
    {
        throw ConfigError(
            fmt::format("component '{}': lifetime must be >= 1 year", s.name));
    }
    if (!(s.efficiency > 0.0 && s.efficiency <= 1.0))
    {
        throw ConfigError(fmt::format(
            "component '{}': efficiency must lie in (0, 1]", s.name));
    }
}

ComponentTable
DefaultComponentTable()
{
    return {{
        {"WT", "100 kW", 120000.0, 100000.0, 4600.0, 1.0, 20},
        {"SC modules", "3.23 Wh", 32.0, 32.0, 0.5, 0.95, 10},
        {"Battery packs", "7.5 kWh", 630.0, 600.0, 20.0, 0.90, 12},
        {"Electrolyser", "kW", 1000.0, 1000.0, 20.0, 0.60, 15},
        {"H2 reservoir", "kg", 470.0, 470.0, 9.0, 0.98, 20},
        {"Fuel cell", "kW", 1100.0, 900.0, 28.0, 0.50, 5},
        {"Heat exchanger", "kW", 100.0, 90.0, 2.0, 0.90, 15},
        {"Hot water tank", "L", 0.5, 0.3, 0.0, 0.96, 15},
        {"Inline electric heater", "kW", 1000.0, 1000.0, 8.0, 0.97, 15},
        {"H2 refilling station", "kg H2/h", 6000.0, 5000.0, 180.0, 0.95, 20},
        {"Electric loads' inverter", "kW", 350.0, 300.0, 7.0, 0.90, 15},
    }};
}

std::string_view
EquipmentKey(Equipment e)
{
    static constexpr std::array<std::string_view, EquipmentCount> keys{
        "wind_turbine",   "sc_module",      "battery_pack",  "electrolyser",
        "h2_tank",        "fuel_cell",      "heat_exchanger", "hot_water_tank",
        "inline_heater",  "h2_station",     "inverter",
    };
    return keys[static_cast<std::size_t>(e)];
}

void
Validate(EconomicParams const& e)
{
    if (!(e.discountRate > 0.0) || !std::isfinite(e.discountRate))
    {
        throw ConfigError("discount rate must be > 0");
    }
    if (e.horizon_years < 1)
    {
        throw ConfigError("project horizon must be >= 1 year");
    }
    if (!(e.nzdPerUsd > 0.0))
    {
        throw ConfigError("currency conversion rate must be > 0");
    }
}

double
Crf(double d, int years)
{
    double g = std::pow(1.0 + d, years);
    return d * g / (g - 1.0);
}

double
Sppw(double d, double years)
{
    return 1.0 / std::pow(1.0 + d, years);
}

std::vector<int>
ReplacementYears(int lifetime, int horizon)
{
    std::vector<int> years;
    for (int y = lifetime; y < horizon; y += lifetime)
    {
        years.push_back(y);
    }
    return years;
}

double
SalvageValue(ComponentSpec const& spec, int horizon, double rate)
{
    auto reps = ReplacementYears(spec.lifetime_years, horizon);
    int lastInstall = reps.empty() ? 0 : reps.back();
    int remaining = spec.lifetime_years - (horizon - lastInstall);
    if (remaining <= 0)
    {
        return 0.0;
    }
    return spec.replacementCost * remaining / spec.lifetime_years
        * Sppw(rate, horizon);
}

namespace
{

ComponentCost
CostOf(Equipment e, double units, ComponentSpec const& spec, EconomicParams const& econ)
{
    double d = econ.discountRate;
    int horizon = econ.horizon_years;
    double k = 0.0;
    for (int y : ReplacementYears(spec.lifetime_years, horizon))
    {
        k += Sppw(d, y);
    }
    ComponentCost c;
    c.equipment = e;
    c.units = units;
    c.capital = units * spec.capitalCost;
    c.replacement = units * spec.replacementCost * k;
    c.om = units * spec.omCost / Crf(d, horizon);
    c.salvage = units * SalvageValue(spec, horizon, d);
    c.npc = c.capital + c.replacement + c.om - c.salvage;
    return c;
}

} // namespace

double
ComponentNpc(double units, ComponentSpec const& spec, EconomicParams const& econ)
{
    return CostOf(Equipment::WindTurbine, units, spec, econ).npc;
}

CostReport
TotalNpc(DesignVector const& design, ComponentTable const& table, EconomicParams const& econ)
{
    Validate(econ);
    CostReport r;
    auto units = ToArray(design);
    for (std::size_t i = 0; i < EquipmentCount; ++i)
    {
        Validate(table[i]);
        r.components[i] = CostOf(static_cast<Equipment>(i), units[i], table[i], econ);
        r.totalNpc += r.components[i].npc;
    }
    r.annualized = Annualize(r.totalNpc, econ);
    return r;
}

double
Annualize(double totalNpc, EconomicParams const& econ)
{
    return Crf(econ.discountRate, econ.horizon_years) * totalNpc;
}

namespace
{

using Share = std::array<double, 3>;

Share
Normalize(Share s, Share fallback)
{
    double total = s[0] + s[1] + s[2];
    if (!(total > 0.0))
    {
        return fallback;
    }
    return {s[0] / total, s[1] / total, s[2] / total};
}

constexpr Share ToElectricity{1.0, 0.0, 0.0};
constexpr Share ToHeat{0.0, 1.0, 0.0};
constexpr Share ToHydrogen{0.0, 0.0, 1.0};

} // namespace

CarrierShares
AttributeCarriers(std::span<HourRecord const> hours)
{
    double fcToLoad = 0.0;
    double fcToHeat = 0.0;
    double tankToFc = 0.0;
    double tankToStation = 0.0;
    double windToElectric = 0.0;
    double windToHeat = 0.0;
    double windToElectrolyser = 0.0;
    for (auto const& h : hours)
    {
        double fcMain = h.fcElectric_kW - h.fcElectricToHeater_kW;
        fcToLoad += fcMain;
        fcToHeat += h.fcElectricToHeater_kW + h.fcHeatRecovered_kW;
        tankToFc += h.fcH2_kW;
        tankToStation += h.tankToStation_kW;
        windToElectric += std::max(
            0.0,
            h.dcLoadServed_kW + h.scCharge_kW + h.batteryCharge_kW
                - h.scDischarge_kW - h.batteryDischarge_kW - fcMain);
        windToHeat += h.heaterFromWind_kW;
        windToElectrolyser += h.electrolyser_kW;
    }
    Share fc = Normalize({fcToLoad, fcToHeat, 0.0}, ToElectricity);
    double tankOut = tankToFc + tankToStation;
    Share tank = tankOut > 0.0
        ? Share{tankToFc / tankOut * fc[0], tankToFc / tankOut * fc[1],
                tankToStation / tankOut}
        : ToHydrogen;
    Share wind = Normalize(
        {windToElectric + windToElectrolyser * tank[0],
         windToHeat + windToElectrolyser * tank[1],
         windToElectrolyser * tank[2]},
        ToElectricity);
    // stores discharge only into the load bus
    Share storage = ToElectricity;

    CarrierShares out;
    auto set = [&](Equipment e, Share s) { out.share[static_cast<std::size_t>(e)] = s; };
    set(Equipment::WindTurbine, wind);
    set(Equipment::ScModule, storage);
    set(Equipment::BatteryPack, storage);
    set(Equipment::Electrolyser, tank);
    set(Equipment::H2Tank, tank);
    set(Equipment::FuelCell, fc);
    set(Equipment::HeatExchanger, ToHeat);
    set(Equipment::HotWaterTank, ToHeat);
    set(Equipment::InlineHeater, ToHeat);
    set(Equipment::H2Station, ToHydrogen);
    set(Equipment::Inverter, ToElectricity);
    return out;
}

LevelizedCosts
ComputeLevelizedCosts(
    CostReport const& report,
    std::span<HourRecord const> hours,
    ThermalSpec const& thermal,
    EconomicParams const& econ)
{
    LevelizedCosts lc;
    if (hours.empty())
    {
        return lc;
    }
    auto shares = AttributeCarriers(hours);
    double crf = Crf(econ.discountRate, econ.horizon_years);
    for (std::size_t i = 0; i < EquipmentCount; ++i)
    {
        double annual = report.components[i].npc * crf;
        for (std::size_t c = 0; c < 3; ++c)
        {
            lc.attributedAnnual_usd[c] += annual * shares.share[i][c];
        }
    }
    double toYear = static_cast<double>(HoursPerYear) / hours.size();
    for (auto const& h : hours)
    {
        lc.servedElectricity_kWh += h.acServed_kW;
        lc.servedHeat_kWh += h.thermalServed_kW;
        lc.servedH2_kg += h.h2Delivered_kg;
    }
    lc.servedElectricity_kWh *= toYear;
    lc.servedHeat_kWh *= toYear;
    lc.servedH2_kg *= toYear;
    lc.servedHotWater_L = DemandMassFlow(lc.servedHeat_kWh, thermal);

    double fx = econ.nzdPerUsd;
    auto ratio = [fx](double cost, double qty) -> std::optional<double> {
        if (!(qty > 0.0))
        {
            return std::nullopt;
        }
        return cost * fx / qty;
    };
    lc.electricity_perKWh = ratio(lc.attributedAnnual_usd[0], lc.servedElectricity_kWh);
    lc.hotWater_perL = ratio(lc.attributedAnnual_usd[1], lc.servedHotWater_L);
    lc.h2_perKg = ratio(lc.attributedAnnual_usd[2], lc.servedH2_kg);
    lc.total_perKWh = ratio(
        report.annualized,
        lc.servedElectricity_kWh + lc.servedHeat_kWh
            + lc.servedH2_kg * HhvH2_kWhPerKg);
    return lc;
}

double
NetPresentValue(std::span<double const> cf, double rate)
{
    double npv = 0.0;
    double factor = 1.0;
    for (double x : cf)
    {
        npv += x / factor;
        factor *= 1.0 + rate;
    }
    return npv;
}

double
InternalRateOfReturn(std::span<double const> cf)
{
    double lo = -0.99;
    double hi = 10.0;
    double flo = NetPresentValue(cf, lo);
    double fhi = NetPresentValue(cf, hi);
    if (flo == 0.0)
    {
        return lo;
    }
    if (fhi == 0.0)
    {
        return hi;
    }
    if ((flo > 0.0) == (fhi > 0.0))
    {
        throw IrrUndefined("NPV does not change sign on [-0.99, 10]");
    }
    while (hi - lo > 1e-9)
    {
        double mid = 0.5 * (lo + hi);
        double fm = NetPresentValue(cf, mid);
        if (fm == 0.0)
        {
            return mid;
        }
        if ((fm > 0.0) == (flo > 0.0))
        {
            lo = mid;
            flo = fm;
        }
        else
        {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

FinancialMetrics
ComputeFinancialMetrics(std::span<double const> cf, double rate)
{
    if (cf.size() < 2 || !(cf[0] < 0.0))
    {
        throw ConfigError(
            "cashflows need at least two years and a negative investment");
    }
    FinancialMetrics m;
    m.dpp_years = std::numeric_limits<double>::infinity();
    double cumulative = cf[0];
    double inflows = 0.0;
    double factor = 1.0;
    for (std::size_t t = 1; t < cf.size(); ++t)
    {
        factor *= 1.0 + rate;
        double discounted = cf[t] / factor;
        inflows += discounted;
        if (std::isinf(m.dpp_years) && cumulative < 0.0
            && cumulative + discounted >= 0.0)
        {
            m.dpp_years = static_cast<double>(t - 1) + (-cumulative) / discounted;
        }
        cumulative += discounted;
    }
    m.profitabilityIndex = inflows / std::abs(cf[0]);
    try
    {
        m.irr = InternalRateOfReturn(cf);
    }
    catch (IrrUndefined const&)
    {
        m.irr = std::nullopt;
    }
    return m;
}

std::vector<double>
ProjectCashflows(
    CostReport const& report,
    ComponentTable const& table,
    LevelizedCosts const& served,
    EconomicParams const& econ)
{
    int horizon = econ.horizon_years;
    std::vector<double> cf(static_cast<std::size_t>(horizon) + 1, 0.0);
    auto const& tariff = econ.tariffs;
    double revenue = (served.servedElectricity_kWh * tariff.electricity_nzdPerKWh
                      + served.servedHotWater_L * tariff.hotWater_nzdPerL
                      + served.servedH2_kg * tariff.h2_nzdPerKg)
        / econ.nzdPerUsd;
    for (std::size_t i = 0; i < EquipmentCount; ++i)
    {
        auto const& spec = table[i];
        double units = report.components[i].units;
        cf[0] -= units * spec.capitalCost;
        for (int y = 1; y <= horizon; ++y)
        {
            cf[y] -= units * spec.omCost;
        }
        for (int y : ReplacementYears(spec.lifetime_years, horizon))
        {
            cf[y] -= units * spec.replacementCost;
        }
        cf[horizon] += units * SalvageValue(spec, horizon, econ.discountRate)
            / Sppw(econ.discountRate, horizon);
    }
    for (int y = 1; y <= horizon; ++y)
    {
        cf[y] += revenue;
    }
    return cf;
}

} // namespace mecm
