#include "mecm/dispatch.hpp"

#include "mecm/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <fmt/os.h>

namespace mecm
{

std::array<std::string_view, DesignDimensions> const&
DesignVariableNames()
{
    static constexpr std::array<std::string_view, DesignDimensions> names{
        "wind_turbines",     "sc_modules",       "battery_packs",
        "electrolyser_kw",   "h2_tank_kg",       "fuel_cell_kw",
        "heat_exchanger_kw", "hot_water_tank_l", "inline_heater_kw",
        "h2_station_kg_per_h", "inverter_kw",
    };
    return names;
}

std::array<double, DesignDimensions>
ToArray(DesignVector const& d)
{
    return {
        static_cast<double>(d.windTurbines),
        static_cast<double>(d.scModules),
        static_cast<double>(d.batteryPacks),
        d.electrolyser_kW,
        d.h2Tank_kg,
        d.fuelCell_kW,
        d.heatExchanger_kW,
        d.hotWaterTank_L,
        d.inlineHeater_kW,
        d.h2Station_kgPerH,
        d.inverter_kW,
    };
}

DesignVector
DesignFromArray(std::span<double const> x)
{
    if (x.size() != DesignDimensions)
    {
        throw ConfigError(fmt::format(
            "design needs {} values, got {}", DesignDimensions, x.size()));
    }
    DesignVector d;
    d.windTurbines = static_cast<int>(std::lround(x[0]));
    d.scModules = static_cast<int>(std::lround(x[1]));
    d.batteryPacks = static_cast<int>(std::lround(x[2]));
    d.electrolyser_kW = x[3];
    d.h2Tank_kg = x[4];
    d.fuelCell_kW = x[5];
    d.heatExchanger_kW = x[6];
    d.hotWaterTank_L = x[7];
    d.inlineHeater_kW = x[8];
    d.h2Station_kgPerH = x[9];
    d.inverter_kW = x[10];
    return d;
}

DesignVector
StewartIslandReferenceDesign()
{
    return DesignVector{
        31, 8376, 18, 964.0, 619.0, 261.0, 213.0, 283301.0, 97.0, 17.2, 741.0};
}

void
Validate(SystemSpec const& spec)
{
    Validate(spec.turbine);
    Validate(spec.efficiency);
    Validate(spec.thermal);
    auto const& l = spec.limits;
    auto check = [](char const* name, double lo, double hi) {
        if (!(0.0 <= lo && lo < hi && hi <= 1.0))
        {
            throw ConfigError(
                fmt::format("{} SOC limits need 0 <= min < max <= 1", name));
        }
    };
    check("battery", l.batterySocMin, l.batterySocMax);
    check("sc", l.scSocMin, l.scSocMax);
    check("h2 tank", l.tankSocMin, l.tankSocMax);
    if (!(spec.scModule_kWh > 0.0) || !(spec.batteryPack_kWh > 0.0))
    {
        throw ConfigError("storage unit sizes must be positive");
    }
}

void
Validate(StrategyParams const& s)
{
    if (s.filter1Window_h < 1 || s.filter2Window_h < 1)
    {
        throw ConfigError("filter windows must be at least 1 h");
    }
    if (!(s.filter2Window_h < s.filter1Window_h))
    {
        throw ConfigError(
            "second filter window must be shorter than the first");
    }
    for (double f :
         {s.initialScFraction, s.initialBatteryFraction, s.initialTankFraction})
    {
        if (!(f >= 0.0 && f <= 1.0))
        {
            throw ConfigError("initial storage fractions must lie in [0, 1]");
        }
    }
}

LoadProfiles
LoadProfiles::FromSeries(
    TimeSeries const& wind,
    TimeSeries const& electric,
    TimeSeries const& thermal,
    TimeSeries const& h2)
{
    return {wind.data(), electric.data(), thermal.data(), h2.data()};
}

void
Validate(LoadProfiles const& p)
{
    std::size_t n = p.windSpeed_mps.size();
    if (n == 0 || p.electric_kW.size() != n || p.thermal_kW.size() != n
        || p.h2_kgPerH.size() != n)
    {
        throw ConfigError(fmt::format(
            "profile lengths disagree (wind {}, electric {}, thermal {}, "
            "h2 {})",
            n, p.electric_kW.size(), p.thermal_kW.size(), p.h2_kgPerH.size()));
    }
    for (auto const* series :
         {&p.windSpeed_mps, &p.electric_kW, &p.thermal_kW, &p.h2_kgPerH})
    {
        for (double v : *series)
        {
            if (!std::isfinite(v) || v < 0.0)
            {
                throw ConfigError("profile values must be finite and >= 0");
            }
        }
    }
}

namespace
{

void
ValidateDesign(DesignVector const& d)
{
    auto arr = ToArray(d);
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        if (!std::isfinite(arr[i]) || arr[i] < 0.0)
        {
            throw ConfigError(fmt::format(
                "design variable '{}' must be finite and >= 0",
                DesignVariableNames()[i]));
        }
    }
}

} // namespace

std::span<HourColumn const>
HourColumns()
{
    using H = HourRecord;
    static constexpr HourColumn columns[] = {
        {"wind_speed_mps", &H::windSpeed_mps},
        {"p_wt_kw", &H::wind_kW},
        {"filter_h2_kw", &H::filterH2_kW},
        {"filter_battery_kw", &H::filterBattery_kW},
        {"filter_sc_kw", &H::filterSc_kW},
        {"ac_demand_kw", &H::acDemand_kW},
        {"ac_served_kw", &H::acServed_kW},
        {"unmet_electric_kw", &H::unmetElectric_kW},
        {"dc_load_served_kw", &H::dcLoadServed_kW},
        {"p_electrolyser_kw", &H::electrolyser_kW},
        {"p_e_ht_kw", &H::electrolyserH2_kW},
        {"p_ht_fc_kw", &H::fcH2_kW},
        {"p_fc_e_kw", &H::fcElectric_kW},
        {"p_fc_e_heater_kw", &H::fcElectricToHeater_kW},
        {"p_fc_heat_recovered_kw", &H::fcHeatRecovered_kW},
        {"p_sc_ch_kw", &H::scCharge_kW},
        {"p_sc_dch_kw", &H::scDischarge_kW},
        {"p_bat_ch_kw", &H::batteryCharge_kW},
        {"p_bat_dch_kw", &H::batteryDischarge_kW},
        {"p_ht_s_kw", &H::tankToStation_kW},
        {"p_heater_kw", &H::heater_kW},
        {"p_heater_wind_kw", &H::heaterFromWind_kW},
        {"heater_heat_kw", &H::heaterHeat_kW},
        {"p_dump_kw", &H::dump_kW},
        {"thermal_demand_kw", &H::thermalDemand_kW},
        {"tank_heat_delivered_kw", &H::tankHeatDelivered_kW},
        {"thermal_served_kw", &H::thermalServed_kW},
        {"unmet_thermal_kw", &H::unmetThermal_kW},
        {"thermal_dumped_kw", &H::thermalDumped_kW},
        {"h2_demand_kg", &H::h2Demand_kg},
        {"h2_delivered_kg", &H::h2Delivered_kg},
        {"unmet_h2_kg", &H::unmetH2_kg},
        {"sc_energy_kwh", &H::scEnergy_kWh},
        {"battery_energy_kwh", &H::batteryEnergy_kWh},
        {"h2_mass_kg", &H::h2Mass_kg},
        {"tank_temp_c", &H::tankTemp_C},
    };
    return columns;
}

FilterSplit
LowpassDecompose(std::span<double const> x, int window)
{
    if (window < 1)
    {
        throw ConfigError("filter window must be at least 1");
    }
    std::size_t n = x.size();
    FilterSplit out{std::vector<double>(n), std::vector<double>(n)};
    auto left = static_cast<std::ptrdiff_t>((window - 1) / 2);
    auto right = static_cast<std::ptrdiff_t>(window - 1) - left;
    auto last = static_cast<std::ptrdiff_t>(n) - 1;
    for (std::ptrdiff_t t = 0; t <= last; ++t)
    {
        std::ptrdiff_t a = std::max<std::ptrdiff_t>(0, t - left);
        std::ptrdiff_t b = std::min(last, t + right);
        double sum = 0.0;
        for (std::ptrdiff_t k = a; k <= b; ++k)
        {
            sum += x[k];
        }
        out.low[t] = window == 1 ? x[t] : sum / static_cast<double>(b - a + 1);
        out.high[t] = x[t] - out.low[t];
    }
    return out;
}

namespace
{

// Moves up to `budget` out of `flow`.
void
BackOff(double& flow, double& budget)
{
    double cut = std::min(flow, budget);
    flow -= cut;
    budget -= cut;
}

// Moves up to `budget` into `flow` without exceeding `cap`.
void
TakeUp(double& flow, double cap, double& budget)
{
    double add = std::min(std::max(0.0, cap - flow), budget);
    flow += add;
    budget -= add;
}

struct Stores
{
    StorageState sc;
    StorageState battery;
    HydrogenTankState h2;
    ThermalTankState water;
};

StoreSnapshot
Snapshot(Stores const& s)
{
    return {s.sc.energy_kWh, s.battery.energy_kWh, s.h2.mass_kg,
            s.water.temperature_C};
}

Stores
InitialStores(
    DesignVector const& d, SystemSpec const& spec, StrategyParams const& strat)
{
    auto const& l = spec.limits;
    Stores s;
    s.sc.capacity_kWh = d.scModules * spec.scModule_kWh;
    s.sc.socMin = l.scSocMin;
    s.sc.socMax = l.scSocMax;
    s.sc.energy_kWh = s.sc.capacity_kWh
        * (l.scSocMin + strat.initialScFraction * (l.scSocMax - l.scSocMin));
    s.battery.capacity_kWh = d.batteryPacks * spec.batteryPack_kWh;
    s.battery.socMin = l.batterySocMin;
    s.battery.socMax = l.batterySocMax;
    s.battery.energy_kWh = s.battery.capacity_kWh
        * (l.batterySocMin
           + strat.initialBatteryFraction * (l.batterySocMax - l.batterySocMin));
    s.h2.capacity_kg = d.h2Tank_kg;
    s.h2.socMin = l.tankSocMin;
    s.h2.socMax = l.tankSocMax;
    s.h2.mass_kg = std::clamp(
        d.h2Tank_kg * strat.initialTankFraction, s.h2.MinMass(), s.h2.MaxMass());
    s.water.waterMass_kg = d.hotWaterTank_L; // 1 kg per litre
    s.water.temperature_C = spec.thermal.initialTankTemp_C;
    return s;
}

DispatchResult
RunPass(
    DesignVector const& d,
    LoadProfiles const& p,
    SystemSpec const& spec,
    StrategyParams const& strat,
    Stores stores)
{
    auto const& eff = spec.efficiency;
    auto const& thermal = spec.thermal;
    constexpr double dt = 1.0;
    std::size_t const n = p.size();
    StorageEfficiency const storeEta =
        SplitEfficiency(eff.hybridStorage, spec.storageMode);

    DispatchResult result;
    result.hours.resize(n);
    result.initial = Snapshot(stores);
    result.scCapacity_kWh = stores.sc.capacity_kWh;
    result.batteryCapacity_kWh = stores.battery.capacity_kWh;
    result.h2Capacity_kg = stores.h2.capacity_kg;
    result.storageEfficiency = storeEta;
    result.inverterEfficiency = eff.inverter;
    result.electrolyserEfficiency = eff.electrolyser;
    result.h2TankEfficiency = eff.h2Tank;

    std::vector<double> wind(n);
    std::vector<double> acTarget(n);
    std::vector<double> dcTarget(n);
    std::vector<double> mismatch(n);
    for (std::size_t t = 0; t < n; ++t)
    {
        wind[t] = d.windTurbines * WindTurbinePower(p.windSpeed_mps[t], spec.turbine);
        acTarget[t] = std::min(p.electric_kW[t], d.inverter_kW);
        dcTarget[t] = acTarget[t] / eff.inverter;
        mismatch[t] = wind[t] - dcTarget[t];
    }
    auto [slow, fastA] = LowpassDecompose(mismatch, strat.filter1Window_h);
    auto [mid, fast] = LowpassDecompose(fastA, strat.filter2Window_h);

    for (std::size_t t = 0; t < n; ++t)
    {
        HourRecord& h = result.hours[t];
        h.windSpeed_mps = p.windSpeed_mps[t];
        h.wind_kW = wind[t];
        h.filterH2_kW = slow[t];
        h.filterBattery_kW = mid[t];
        h.filterSc_kW = fast[t];
        h.acDemand_kW = p.electric_kW[t];
        h.thermalDemand_kW = p.thermal_kW[t];
        h.h2Demand_kg = p.h2_kgPerH[t];

        // Capabilities at the start of the hour.
        double const maxElec = std::min(
            d.electrolyser_kW,
            MaxTankInflow(stores.h2, dt) / eff.electrolyser);
        double const fcFromTank =
            MaxTankOutflow(stores.h2, eff, dt) * eff.fuelCellElectric;
        double const maxFc = std::min(d.fuelCell_kW, fcFromTank);
        double const maxBatCh = MaxChargePower(stores.battery, storeEta, dt);
        double const maxBatDch = MaxDischargePower(stores.battery, storeEta, dt);
        double const maxScCh = MaxChargePower(stores.sc, storeEta, dt);
        double const maxScDch = MaxDischargePower(stores.sc, storeEta, dt);

        // Routed requests from the filter cascade.
        double elec = 0.0;
        double fc = 0.0;
        double batCh = 0.0;
        double batDch = 0.0;
        double scCh = 0.0;
        double scDch = 0.0;
        if (slow[t] > 0.0)
        {
            // electrolysis runs on wind surplus only
            elec = std::min({slow[t], std::max(0.0, mismatch[t]), maxElec});
        }
        else
        {
            fc = std::min(-slow[t], maxFc);
        }
        if (mid[t] > 0.0)
        {
            batCh = std::min(mid[t], maxBatCh);
        }
        else
        {
            batDch = std::min(-mid[t], maxBatDch);
        }
        if (fast[t] > 0.0)
        {
            scCh = std::min(fast[t], maxScCh);
        }
        else
        {
            scDch = std::min(-fast[t], maxScDch);
        }

        // Settle the DC bus.
        double net = wind[t] + batDch + scDch + fc - dcTarget[t] - batCh - scCh
            - elec;
        double surplus = 0.0;
        double shed = 0.0;
        if (net > 0.0)
        {
            BackOff(fc, net);
            BackOff(batDch, net);
            BackOff(scDch, net);
            if (batDch == 0.0)
            {
                TakeUp(batCh, maxBatCh, net);
            }
            if (scDch == 0.0)
            {
                TakeUp(scCh, maxScCh, net);
            }
            if (fc == 0.0)
            {
                TakeUp(elec, maxElec, net);
            }
            surplus = net;
        }
        else if (net < 0.0)
        {
            double need = -net;
            BackOff(elec, need);
            BackOff(batCh, need);
            BackOff(scCh, need);
            if (batCh == 0.0)
            {
                TakeUp(batDch, maxBatDch, need);
            }
            if (scCh == 0.0)
            {
                TakeUp(scDch, maxScDch, need);
            }
            if (elec == 0.0)
            {
                TakeUp(fc, maxFc, need);
            }
            shed = need;
        }

        stores.battery = StorageStep(stores.battery, batCh, batDch, storeEta, dt);
        stores.sc = StorageStep(stores.sc, scCh, scDch, storeEta, dt);

        // Thermal path: recovered fuel-cell heat into the tank, then the draw.
        double const fcH2Main = fc / eff.fuelCellElectric;
        double const hxMain = std::min(
            ApplyEfficiency(FcOutputs(fcH2Main, eff).recoverableHeat_kW, eff.heatExchanger),
            d.heatExchanger_kW);
        auto added = AddTankHeat(stores.water, hxMain, thermal, dt);
        stores.water = added.state;
        h.thermalDumped_kW += added.excess_kW;
        auto draw = DrawTank(stores.water, p.thermal_kW[t], thermal, eff, dt);
        stores.water = draw.state;
        h.tankHeatDelivered_kW = draw.delivered_kW;

        double const heatGap = std::max(0.0, p.thermal_kW[t] - draw.delivered_kW);
        double heaterNeed = std::min(heatGap / eff.inlineHeater, d.inlineHeater_kW);
        // Heater supply: spare wind, wind diverted from the electrolyser, then
        // extra fuel-cell output.
        double fromSurplus = std::min(heaterNeed, surplus);
        surplus -= fromSurplus;
        heaterNeed -= fromSurplus;
        double fromElec = std::min(heaterNeed, elec);
        elec -= fromElec;
        heaterNeed -= fromElec;
        double fcExtra = std::min(
            {heaterNeed, std::max(0.0, d.fuelCell_kW - fc),
             std::max(0.0, fcFromTank - fc)});
        double const heaterElectric = fromSurplus + fromElec + fcExtra;
        double const heaterHeat = ApplyEfficiency(heaterElectric, eff.inlineHeater);

        double const fcH2Extra = fcExtra / eff.fuelCellElectric;
        double const hxExtra = std::min(
            ApplyEfficiency(FcOutputs(fcH2Extra, eff).recoverableHeat_kW, eff.heatExchanger),
            std::max(0.0, d.heatExchanger_kW - hxMain));
        added = AddTankHeat(stores.water, hxExtra, thermal, dt);
        stores.water = added.state;
        h.thermalDumped_kW += added.excess_kW;

        // Hydrogen tank: electrolyser in, fuel cell out, then the station.
        double const elecH2 = ApplyEfficiency(elec, eff.electrolyser);
        stores.h2 = H2TankStep(stores.h2, elecH2, fcH2Main + fcH2Extra, 0.0, eff, dt);
        double const deliverable = std::min(p.h2_kgPerH[t], d.h2Station_kgPerH);
        double toStation = std::min(
            deliverable / eff.h2Station * HhvH2_kWhPerKg,
            MaxTankOutflow(stores.h2, eff, dt));
        stores.h2 = H2TankStep(stores.h2, 0.0, 0.0, toStation, eff, dt);
        double const delivered = std::min(
            p.h2_kgPerH[t],
            ApplyEfficiency(toStation, eff.h2Station) / HhvH2_kWhPerKg);

        h.electrolyser_kW = elec;
        h.electrolyserH2_kW = elecH2;
        h.fcH2_kW = fcH2Main + fcH2Extra;
        h.fcElectric_kW = fc + fcExtra;
        h.fcElectricToHeater_kW = fcExtra;
        h.fcHeatRecovered_kW = hxMain + hxExtra;
        h.batteryCharge_kW = batCh;
        h.batteryDischarge_kW = batDch;
        h.scCharge_kW = scCh;
        h.scDischarge_kW = scDch;
        h.dcLoadServed_kW = dcTarget[t] - shed;
        h.acServed_kW = std::max(0.0, acTarget[t] - ApplyEfficiency(shed, eff.inverter));
        h.unmetElectric_kW = std::max(0.0, p.electric_kW[t] - h.acServed_kW);
        h.tankToStation_kW = toStation;
        h.heater_kW = heaterElectric;
        h.heaterFromWind_kW = fromSurplus + fromElec;
        h.heaterHeat_kW = heaterHeat;
        h.dump_kW = surplus;
        h.thermalServed_kW = std::min(p.thermal_kW[t], draw.delivered_kW + heaterHeat);
        h.unmetThermal_kW = std::max(0.0, p.thermal_kW[t] - h.thermalServed_kW);
        h.h2Delivered_kg = delivered;
        h.unmetH2_kg = std::max(0.0, p.h2_kgPerH[t] - delivered);
        h.scEnergy_kWh = stores.sc.energy_kWh;
        h.batteryEnergy_kWh = stores.battery.energy_kWh;
        h.h2Mass_kg = stores.h2.mass_kg;
        h.tankTemp_C = stores.water.temperature_C;
    }
    result.final = Snapshot(stores);
    return result;
}

} // namespace

DispatchResult
SimulateYear(
    DesignVector const& design,
    LoadProfiles const& profiles,
    SystemSpec const& spec,
    StrategyParams const& strategy)
{
    Validate(profiles);
    Validate(spec);
    Validate(strategy);
    ValidateDesign(design);
    Stores start = InitialStores(design, spec, strategy);
    if (strategy.initialMode == InitialStateMode::Periodic)
    {
        auto warm = RunPass(design, profiles, spec, strategy, start);
        start.sc.energy_kWh = warm.final.scEnergy_kWh;
        start.battery.energy_kWh = warm.final.batteryEnergy_kWh;
        start.h2.mass_kg = warm.final.h2Mass_kg;
        start.water.temperature_C = warm.final.tankTemp_C;
    }
    return RunPass(design, profiles, spec, strategy, start);
}

double
BalanceResidual(HourRecord const& h)
{
    double supply = h.wind_kW + h.scDischarge_kW + h.batteryDischarge_kW
        + h.fcElectric_kW;
    double use = h.dcLoadServed_kW + h.scCharge_kW + h.batteryCharge_kW
        + h.electrolyser_kW + h.heater_kW + h.dump_kW;
    return supply - use;
}

bool
CheckPowerBalance(DispatchResult const& result, double tol)
{
    return std::all_of(
        result.hours.begin(), result.hours.end(),
        [tol](HourRecord const& h) { return std::abs(BalanceResidual(h)) <= tol; });
}

double
Lpsp(std::span<double const> supplied, std::span<double const> demanded, double tol)
{
    if (supplied.size() != demanded.size())
    {
        throw ConfigError(fmt::format(
            "LPSP series lengths differ ({} vs {})", supplied.size(),
            demanded.size()));
    }
    if (supplied.empty())
    {
        return 0.0;
    }
    std::size_t deficient = 0;
    for (std::size_t i = 0; i < supplied.size(); ++i)
    {
        if (supplied[i] < demanded[i] - tol)
        {
            ++deficient;
        }
    }
    return 100.0 * static_cast<double>(deficient)
        / static_cast<double>(supplied.size());
}

LpspSummary
ComputeLpsp(DispatchResult const& r, double tol)
{
    std::size_t n = r.hours.size();
    std::vector<double> sup(n);
    std::vector<double> dem(n);
    auto index = [&](double HourRecord::*s, double HourRecord::*dm) {
        for (std::size_t t = 0; t < n; ++t)
        {
            sup[t] = r.hours[t].*s;
            dem[t] = r.hours[t].*dm;
        }
        return Lpsp(sup, dem, tol);
    };
    return {
        index(&HourRecord::acServed_kW, &HourRecord::acDemand_kW),
        index(&HourRecord::thermalServed_kW, &HourRecord::thermalDemand_kW),
        index(&HourRecord::h2Delivered_kg, &HourRecord::h2Demand_kg),
    };
}

CyclicalError
CyclicalStateError(DispatchResult const& r)
{
    auto rel = [](double a, double b, double cap) {
        return cap > 0.0 ? std::abs(b - a) / cap : 0.0;
    };
    return {
        rel(r.initial.scEnergy_kWh, r.final.scEnergy_kWh, r.scCapacity_kWh),
        rel(r.initial.batteryEnergy_kWh, r.final.batteryEnergy_kWh,
            r.batteryCapacity_kWh),
        rel(r.initial.h2Mass_kg, r.final.h2Mass_kg, r.h2Capacity_kg),
    };
}

double
EnergyLedger::Residual() const
{
    return (wind + fuelCellElectric + storedInitial)
        - (acServed + inverterLoss + storageLoss + electrolyser + heater + dump
           + storedFinal);
}

EnergyLedger
ComputeEnergyLedger(DispatchResult const& r)
{
    EnergyLedger l;
    auto eta = r.storageEfficiency;
    for (auto const& h : r.hours)
    {
        l.wind += h.wind_kW;
        l.fuelCellElectric += h.fcElectric_kW;
        l.acServed += h.acServed_kW;
        l.inverterLoss += h.dcLoadServed_kW - h.acServed_kW;
        double charge = h.scCharge_kW + h.batteryCharge_kW;
        double discharge = h.scDischarge_kW + h.batteryDischarge_kW;
        l.storageLoss +=
            charge * (1.0 - eta.charge) + discharge * (1.0 / eta.discharge - 1.0);
        l.electrolyser += h.electrolyser_kW;
        l.heater += h.heater_kW;
        l.dump += h.dump_kW;
    }
    l.storedInitial = r.initial.scEnergy_kWh + r.initial.batteryEnergy_kWh;
    l.storedFinal = r.final.scEnergy_kWh + r.final.batteryEnergy_kWh;
    return l;
}

double
HydrogenLedger::Residual() const
{
    return (initial_kg + produced_kg) - (toFuelCell_kg + toStation_kg + final_kg);
}

HydrogenLedger
ComputeHydrogenLedger(DispatchResult const& r)
{
    HydrogenLedger l;
    l.initial_kg = r.initial.h2Mass_kg;
    l.final_kg = r.final.h2Mass_kg;
    double outScale = 1.0 / (r.h2TankEfficiency * HhvH2_kWhPerKg);
    for (auto const& h : r.hours)
    {
        l.produced_kg += h.electrolyserH2_kW / HhvH2_kWhPerKg;
        l.toFuelCell_kg += h.fcH2_kW * outScale;
        l.toStation_kg += h.tankToStation_kW * outScale;
    }
    return l;
}

DispatchTotals
Summarize(DispatchResult const& r)
{
    DispatchTotals s;
    for (auto const& h : r.hours)
    {
        s.wind_kWh += h.wind_kW;
        s.acDemand_kWh += h.acDemand_kW;
        s.acServed_kWh += h.acServed_kW;
        s.thermalDemand_kWh += h.thermalDemand_kW;
        s.thermalServed_kWh += h.thermalServed_kW;
        s.h2Demand_kg += h.h2Demand_kg;
        s.h2Delivered_kg += h.h2Delivered_kg;
        s.dump_kWh += h.dump_kW;
        s.electrolyser_kWh += h.electrolyser_kW;
        s.fcElectric_kWh += h.fcElectric_kW;
        s.heater_kWh += h.heater_kW;
    }
    return s;
}

void
WriteDispatchCsv(std::filesystem::path const& path, DispatchResult const& result)
{
    auto out = fmt::output_file(path.string());
    auto cols = HourColumns();
    out.print("hour");
    for (auto const& c : cols)
    {
        out.print(",{}", c.name);
    }
    out.print("\n");
    for (std::size_t t = 0; t < result.hours.size(); ++t)
    {
        out.print("{}", t);
        for (auto const& c : cols)
        {
            out.print(",{}", result.hours[t].*(c.field));
        }
        out.print("\n");
    }
}

std::vector<HourRecord>
ReadDispatchCsv(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError(
            fmt::format("cannot open dispatch table '{}'", path.string()));
    }
    std::string line;
    if (!std::getline(in, line))
    {
        throw ConfigError(fmt::format("'{}' is empty", path.string()));
    }
    // map header positions onto known columns
    std::vector<double HourRecord::*> fields;
    {
        std::stringstream header(line);
        std::string name;
        bool first = true;
        while (std::getline(header, name, ','))
        {
            if (!name.empty() && name.back() == '\r')
            {
                name.pop_back();
            }
            double HourRecord::*field = nullptr;
            for (auto const& c : HourColumns())
            {
                if (c.name == name)
                {
                    field = c.field;
                }
            }
            if (!first && field == nullptr)
            {
                throw ConfigError(fmt::format(
                    "'{}': unknown column '{}'", path.string(), name));
            }
            fields.push_back(field);
            first = false;
        }
    }
    std::vector<HourRecord> hours;
    std::size_t lineNo = 1;
    while (std::getline(in, line))
    {
        ++lineNo;
        if (line.empty() || line == "\r")
        {
            continue;
        }
        HourRecord h;
        std::size_t col = 0;
        std::size_t pos = 0;
        while (pos <= line.size())
        {
            std::size_t next = line.find(',', pos);
            if (next == std::string::npos)
            {
                next = line.size();
            }
            std::string_view cell(line.data() + pos, next - pos);
            if (!cell.empty() && cell.back() == '\r')
            {
                cell.remove_suffix(1);
            }
            if (col >= fields.size())
            {
                throw ConfigError(fmt::format(
                    "'{}' line {}: too many cells", path.string(), lineNo));
            }
            if (fields[col] != nullptr)
            {
                double v = 0.0;
                auto [ptr, ec] =
                    std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (ec != std::errc{} || ptr != cell.data() + cell.size())
                {
                    throw ConfigError(fmt::format(
                        "'{}' line {}: bad number '{}'", path.string(), lineNo,
                        cell));
                }
                h.*(fields[col]) = v;
            }
            ++col;
            pos = next + 1;
        }
        if (col != fields.size())
        {
            throw ConfigError(fmt::format(
                "'{}' line {}: expected {} cells, got {}", path.string(),
                lineNo, fields.size(), col));
        }
        hours.push_back(h);
    }
    return hours;
}

} // namespace mecm
