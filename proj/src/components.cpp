#include "mecm/components.hpp"

#include "mecm/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace mecm
{

namespace
{

// Relative slack when comparing a post-step state against its limits.
constexpr double BoundSlack = 1e-9;

bool
InUnitInterval(double x)
{
    return x > 0.0 && x <= 1.0;
}

double
Slack(double scale)
{
    return BoundSlack * std::max(1.0, std::abs(scale));
}

} // namespace

void
Validate(WindTurbineSpec const& s)
{
    if (!(0.0 < s.cutIn_mps && s.cutIn_mps < s.rated_mps
          && s.rated_mps < s.cutOut_mps))
    {
        throw ConfigError("wind turbine needs 0 < cut-in < rated < cut-out");
    }
    if (!(s.rated_kW > 0.0))
    {
        throw ConfigError("wind turbine rated power must be positive");
    }
}

void
Validate(EfficiencySpec const& e)
{
    struct Named
    {
        char const* name;
        double value;
    };
    for (auto [name, value] : {
             Named{"fuel_cell_electric", e.fuelCellElectric},
             Named{"fuel_cell_recoverable", e.fuelCellRecoverable},
             Named{"h2_tank", e.h2Tank},
             Named{"hybrid_storage", e.hybridStorage},
             Named{"heat_exchanger", e.heatExchanger},
             Named{"inline_heater", e.inlineHeater},
             Named{"h2_station", e.h2Station},
             Named{"electrolyser", e.electrolyser},
             Named{"inverter", e.inverter},
             Named{"hot_water_tank", e.hotWaterTank},
         })
    {
        if (!InUnitInterval(value))
        {
            throw ConfigError(
                fmt::format("efficiency '{}' = {} is outside (0, 1]", name, value));
        }
    }
    if (!(e.fuelCellHeatRatio >= 0.0) || !std::isfinite(e.fuelCellHeatRatio))
    {
        throw ConfigError("fuel cell heat ratio must be finite and >= 0");
    }
}

void
Validate(ThermalSpec const& s)
{
    if (!(s.inletTemp_C < s.demandTemp_C && s.demandTemp_C <= s.maxTankTemp_C))
    {
        throw ConfigError("thermal spec needs inlet < demand <= max temperature");
    }
    if (!(s.initialTankTemp_C >= s.inletTemp_C
          && s.initialTankTemp_C <= s.maxTankTemp_C))
    {
        throw ConfigError(
            "initial tank temperature must lie between inlet and max");
    }
}

double
WindTurbinePower(double v, WindTurbineSpec const& s)
{
    if (v < s.cutIn_mps || v > s.cutOut_mps)
    {
        return 0.0;
    }
    if (v < s.rated_mps)
    {
        double x = (v - s.cutIn_mps) / (s.rated_mps - s.cutIn_mps);
        return s.rated_kW * x * x * x;
    }
    return s.rated_kW;
}

StorageEfficiency
SplitEfficiency(double roundTrip, StorageEfficiencyMode mode)
{
    if (mode == StorageEfficiencyMode::Split)
    {
        double leg = std::sqrt(roundTrip);
        return {leg, leg};
    }
    return {1.0, roundTrip};
}

double
MaxChargePower(StorageState const& s, StorageEfficiency eta, double dt)
{
    double room = s.MaxEnergy() - s.energy_kWh;
    return room > 0.0 ? room / (eta.charge * dt) : 0.0;
}

double
MaxDischargePower(StorageState const& s, StorageEfficiency eta, double dt)
{
    double avail = s.energy_kWh - s.MinEnergy();
    return avail > 0.0 ? avail * eta.discharge / dt : 0.0;
}

StorageState
StorageStep(
    StorageState const& state,
    double ch,
    double dch,
    StorageEfficiency eta,
    double dt)
{
    if (ch < 0.0 || dch < 0.0)
    {
        throw BoundsError("storage powers must be non-negative", 0.0);
    }
    if (ch > 0.0 && dch > 0.0)
    {
        throw BoundsError("storage cannot charge and discharge in one step", 0.0);
    }
    StorageState next = state;
    next.energy_kWh = state.energy_kWh + (eta.charge * ch - dch / eta.discharge) * dt;
    double slack = Slack(state.capacity_kWh);
    if (next.energy_kWh > state.MaxEnergy() + slack)
    {
        throw BoundsError(
            fmt::format(
                "charge of {} kW exceeds the upper SOC limit", ch),
            MaxChargePower(state, eta, dt));
    }
    if (next.energy_kWh < state.MinEnergy() - slack)
    {
        throw BoundsError(
            fmt::format(
                "discharge of {} kW exceeds the lower SOC limit", dch),
            MaxDischargePower(state, eta, dt));
    }
    next.energy_kWh =
        std::clamp(next.energy_kWh, state.MinEnergy(), state.MaxEnergy());
    return next;
}

StorageState
StorageStep(
    StorageState const& state, double ch, double dch, double eta, double dt)
{
    return StorageStep(state, ch, dch, StorageEfficiency{1.0, eta}, dt);
}

double
MaxTankInflow(HydrogenTankState const& s, double dt)
{
    double room = s.MaxMass() - s.mass_kg;
    return room > 0.0 ? room * HhvH2_kWhPerKg / dt : 0.0;
}

double
MaxTankOutflow(HydrogenTankState const& s, EfficiencySpec const& eff, double dt)
{
    double avail = s.mass_kg - s.MinMass();
    return avail > 0.0 ? avail * HhvH2_kWhPerKg * eff.h2Tank / dt : 0.0;
}

HydrogenTankState
H2TankStep(
    HydrogenTankState const& state,
    double in,
    double toFc,
    double toStation,
    EfficiencySpec const& eff,
    double dt)
{
    if (in < 0.0 || toFc < 0.0 || toStation < 0.0)
    {
        throw BoundsError("hydrogen flows must be non-negative", 0.0);
    }
    HydrogenTankState next = state;
    next.mass_kg = state.mass_kg
        + (in - (toFc + toStation) / eff.h2Tank) * dt / HhvH2_kWhPerKg;
    double slack = Slack(state.capacity_kg);
    if (next.mass_kg > state.MaxMass() + slack)
    {
        throw BoundsError(
            "hydrogen inflow exceeds the tank capacity",
            MaxTankInflow(state, dt) + (toFc + toStation) / eff.h2Tank);
    }
    if (next.mass_kg < state.MinMass() - slack)
    {
        throw BoundsError(
            "hydrogen withdrawal exceeds the stored mass",
            MaxTankOutflow(state, eff, dt) + in * eff.h2Tank);
    }
    next.mass_kg = std::clamp(next.mass_kg, state.MinMass(), state.MaxMass());
    return next;
}

FuelCellOutput
FcOutputs(double h2Input, EfficiencySpec const& eff)
{
    double electric = ApplyEfficiency(h2Input, eff.fuelCellElectric);
    double heat = eff.fuelCellRecoverable * eff.fuelCellHeatRatio * electric;
    return {electric, heat};
}

double
HotWaterPower(double mdot, double tOut, double tIn, EfficiencySpec const& eff)
{
    return mdot * WaterCp_kJPerKgC * eff.hotWaterTank * (tOut - tIn) / 3600.0;
}

double
HeaterBoostPower(
    double mdot, double tTankOut, double tDemand, EfficiencySpec const& eff)
{
    if (tTankOut >= tDemand)
    {
        return 0.0;
    }
    return mdot * WaterCp_kJPerKgC * (tDemand - tTankOut) / 3600.0
        / eff.inlineHeater;
}

double
DemandMassFlow(double demand, ThermalSpec const& spec)
{
    return demand * 3600.0
        / (WaterCp_kJPerKgC * (spec.demandTemp_C - spec.inletTemp_C));
}

HeatAddResult
AddTankHeat(
    ThermalTankState const& state, double heat, ThermalSpec const& spec, double dt)
{
    HeatAddResult r{state, 0.0};
    if (heat <= 0.0)
    {
        return r;
    }
    if (state.waterMass_kg <= 0.0)
    {
        r.excess_kW = heat;
        return r;
    }
    double heatCapacity = state.waterMass_kg * WaterCp_kJPerKgC / 3600.0; // kWh/C
    double t = state.temperature_C + heat * dt / heatCapacity;
    if (t > spec.maxTankTemp_C)
    {
        r.excess_kW = (t - spec.maxTankTemp_C) * heatCapacity / dt;
        t = spec.maxTankTemp_C;
    }
    r.state.temperature_C = t;
    return r;
}

TankDrawResult
DrawTank(
    ThermalTankState const& state,
    double demand,
    ThermalSpec const& spec,
    EfficiencySpec const& eff,
    double dt)
{
    TankDrawResult r{state, 0.0, 0.0, spec.inletTemp_C, 0.0};
    double t = state.temperature_C;
    double lift = t - spec.inletTemp_C;
    if (demand <= 0.0 || state.waterMass_kg <= 0.0 || lift <= 0.0)
    {
        return r;
    }
    double demandFlow = DemandMassFlow(demand, spec);
    double maxFlow = state.waterMass_kg / dt;
    double effectiveOut = spec.inletTemp_C + eff.hotWaterTank * lift;
    double hotFlow = 0.0;
    if (effectiveOut >= spec.demandTemp_C)
    {
        // blend down to the delivery temperature
        hotFlow = demand * 3600.0 / (WaterCp_kJPerKgC * eff.hotWaterTank * lift);
        r.outletTemp_C = spec.demandTemp_C;
    }
    else
    {
        hotFlow = demandFlow;
        r.outletTemp_C = effectiveOut;
    }
    hotFlow = std::min(hotFlow, maxFlow);
    r.hotMassFlow_kgPerH = hotFlow;
    r.delivered_kW =
        std::min(demand, HotWaterPower(hotFlow, t, spec.inletTemp_C, eff));
    r.tankEnergyOut_kW = hotFlow * WaterCp_kJPerKgC * lift / 3600.0;
    r.state.temperature_C = t - hotFlow * dt * lift / state.waterMass_kg;
    return r;
}

} // namespace mecm
