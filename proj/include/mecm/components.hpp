#pragma once

namespace mecm
{

inline constexpr double HhvH2_kWhPerKg = 39.7;
inline constexpr double WaterCp_kJPerKgC = 4.19;

struct WindTurbineSpec
{
    double cutIn_mps = 3.0;
    double rated_mps = 15.0;
    double cutOut_mps = 25.0;
    double rated_kW = 100.0;

    bool operator==(WindTurbineSpec const&) const = default;
};

void
Validate(WindTurbineSpec const& spec);

// Conversion efficiencies, each in (0, 1].
struct EfficiencySpec
{
    double fuelCellElectric = 0.50;
    double fuelCellHeatRatio = 0.8; // thermal / electrical output
    double fuelCellRecoverable = 0.65;
    double h2Tank = 0.98;
    double hybridStorage = 0.925;
    double heatExchanger = 0.90;
    double inlineHeater = 0.97;
    double h2Station = 0.95;
    double electrolyser = 0.60;
    double inverter = 0.90;
    double hotWaterTank = 0.96;

    bool operator==(EfficiencySpec const&) const = default;
};

void
Validate(EfficiencySpec const& spec);

// How the hybrid-storage efficiency is applied to a store.
enum class StorageEfficiencyMode
{
    DischargeOnly, // charge at unity, discharge divides by eta
    Split,         // sqrt(eta) on each leg
};

struct StorageState
{
    double energy_kWh = 0.0;
    double capacity_kWh = 0.0;
    double socMin = 0.0;
    double socMax = 1.0;

    double MinEnergy() const { return capacity_kWh * socMin; }
    double MaxEnergy() const { return capacity_kWh * socMax; }
};

struct StorageEfficiency
{
    double charge = 1.0;
    double discharge = 1.0;
};

StorageEfficiency
SplitEfficiency(double roundTrip, StorageEfficiencyMode mode);

// Largest charge / discharge power the store accepts over dt hours.
double
MaxChargePower(StorageState const& s, StorageEfficiency eta, double dt_h);
double
MaxDischargePower(StorageState const& s, StorageEfficiency eta, double dt_h);

// energy' = energy + (eta_c * p_ch - p_dch / eta_d) * dt. Throws
// BoundsError if the result leaves [socMin, socMax] of capacity, or if both
// powers are non-zero, or if a power is negative.
StorageState
StorageStep(
    StorageState const& state,
    double charge_kW,
    double discharge_kW,
    StorageEfficiency eta,
    double dt_h);

// Discharge-only convenience form with a single efficiency.
StorageState
StorageStep(
    StorageState const& state,
    double charge_kW,
    double discharge_kW,
    double eta,
    double dt_h);

struct HydrogenTankState
{
    double mass_kg = 0.0;
    double capacity_kg = 0.0;
    double socMin = 0.0;
    double socMax = 1.0;

    double MinMass() const { return capacity_kg * socMin; }
    double MaxMass() const { return capacity_kg * socMax; }
};

// Largest electrolyser output (H2 energy into the tank, kW) that fits.
double
MaxTankInflow(HydrogenTankState const& s, double dt_h);
// Largest combined withdrawal (fuel cell + station, kW) the tank can cover.
double
MaxTankOutflow(HydrogenTankState const& s, EfficiencySpec const& eff, double dt_h);

// mass' = mass + (p_in - (p_fc + p_station) / eta_tank) * dt / HHV.
HydrogenTankState
H2TankStep(
    HydrogenTankState const& state,
    double in_kW,
    double toFuelCell_kW,
    double toStation_kW,
    EfficiencySpec const& eff,
    double dt_h);

struct FuelCellOutput
{
    double electric_kW = 0.0;
    double recoverableHeat_kW = 0.0;
};

// h2Input_kW is the hydrogen energy drawn from the tank.
FuelCellOutput
FcOutputs(double h2Input_kW, EfficiencySpec const& eff);

struct ThermalSpec
{
    double inletTemp_C = 12.0;
    double demandTemp_C = 40.0;
    double maxTankTemp_C = 65.0;
    double initialTankTemp_C = 40.0;

    bool operator==(ThermalSpec const&) const = default;
};

void
Validate(ThermalSpec const& spec);

// Heat delivered by the tank outlet for a given flow and outlet temperature.
double
HotWaterPower(
    double massFlow_kgPerH,
    double outletTemp_C,
    double inletTemp_C,
    EfficiencySpec const& eff);

// Electrical input the inline heater needs to lift a flow to demandTemp_C.
double
HeaterBoostPower(
    double massFlow_kgPerH,
    double tankOutletTemp_C,
    double demandTemp_C,
    EfficiencySpec const& eff);

// Mass flow that carries a thermal demand at demandTemp_C against inletTemp_C.
double
DemandMassFlow(double demand_kW, ThermalSpec const& spec);

inline double
ApplyEfficiency(double power_kW, double eta)
{
    return eta * power_kW;
}

double
WindTurbinePower(double speed_mps, WindTurbineSpec const& spec);

// Lumped, fully mixed hot-water tank.
struct ThermalTankState
{
    double waterMass_kg = 0.0;
    double temperature_C = 40.0;
};

struct HeatAddResult
{
    ThermalTankState state;
    double excess_kW = 0.0; // heat rejected by the 65 C limit
};

HeatAddResult
AddTankHeat(
    ThermalTankState const& state,
    double heat_kW,
    ThermalSpec const& spec,
    double dt_h);

struct TankDrawResult
{
    ThermalTankState state;
    double delivered_kW = 0.0;    // heat reaching the heater inlet
    double tankEnergyOut_kW = 0.0; // enthalpy removed from the tank
    double outletTemp_C = 0.0;    // effective temperature at the heater inlet
    double hotMassFlow_kgPerH = 0.0;
};

// Serves demand_kW (delivery at demandTemp_C) from the tank as far as it
// can. When the tank is hotter than needed only enough hot water is drawn
// to meet the demand; otherwise the full demand flow is drawn and the
// shortfall is left for the inline heater.
TankDrawResult
DrawTank(
    ThermalTankState const& state,
    double demand_kW,
    ThermalSpec const& spec,
    EfficiencySpec const& eff,
    double dt_h);

} // namespace mecm
