#include "mecm/components.hpp"
#include "mecm/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mecm;

TEST(WindTurbinePower, PointValues)
{
    WindTurbineSpec wt;
    EXPECT_NEAR(WindTurbinePower(15.0, wt), 100.0, 1e-12);
    EXPECT_EQ(WindTurbinePower(2.0, wt), 0.0);
    EXPECT_NEAR(WindTurbinePower(9.0, wt), 12.5, 1e-12);
    EXPECT_NEAR(WindTurbinePower(25.0, wt), 100.0, 1e-12);
    EXPECT_EQ(WindTurbinePower(25.01, wt), 0.0);
    EXPECT_EQ(WindTurbinePower(3.0, wt), 0.0);
}

TEST(WindTurbinePower, ContinuousAtRatedAndMonotone)
{
    WindTurbineSpec wt;
    EXPECT_NEAR(WindTurbinePower(15.0 - 1e-9, wt), 100.0, 1e-6);
    double prev = 0.0;
    for (double v = 0.0; v <= 25.0; v += 0.01)
    {
        double p = WindTurbinePower(v, wt);
        EXPECT_GE(p, prev - 1e-12) << v;
        EXPECT_GE(p, 0.0);
        prev = p;
    }
}

TEST(WindTurbineSpec, Validation)
{
    WindTurbineSpec wt;
    EXPECT_NO_THROW(Validate(wt));
    wt.cutIn_mps = 16.0;
    EXPECT_THROW(Validate(wt), ConfigError);
    wt = {};
    wt.rated_kW = 0.0;
    EXPECT_THROW(Validate(wt), ConfigError);
}

TEST(StorageStep, ChargeExample)
{
    StorageState s{10.0, 20.0, 0.0, 1.0};
    auto next = StorageStep(s, 5.0, 0.0, 0.925, 1.0);
    EXPECT_NEAR(next.energy_kWh, 15.0, 1e-12);
}

TEST(StorageStep, IdleIsIdentity)
{
    StorageState s{10.0, 20.0, 0.2, 1.0};
    auto next = StorageStep(s, 0.0, 0.0, 0.925, 1.0);
    EXPECT_EQ(next.energy_kWh, 10.0);
}

TEST(StorageStep, DischargeToEmpty)
{
    StorageState s{10.0, 20.0, 0.0, 1.0};
    auto next = StorageStep(s, 0.0, 9.25, 0.925, 1.0);
    EXPECT_NEAR(next.energy_kWh, 0.0, 1e-12);
}

TEST(StorageStep, ViolationsCarryMaxFeasible)
{
    StorageState s{10.0, 20.0, 0.0, 1.0};
    try
    {
        StorageStep(s, 12.0, 0.0, 0.925, 1.0);
        FAIL();
    }
    catch (BoundsError const& e)
    {
        EXPECT_NEAR(e.maxFeasible(), 10.0, 1e-12);
    }
    try
    {
        StorageStep(s, 0.0, 10.0, 0.925, 1.0);
        FAIL();
    }
    catch (BoundsError const& e)
    {
        EXPECT_NEAR(e.maxFeasible(), 9.25, 1e-12);
    }
    EXPECT_THROW(StorageStep(s, 1.0, 1.0, 0.925, 1.0), BoundsError);
    EXPECT_THROW(StorageStep(s, -1.0, 0.0, 0.925, 1.0), BoundsError);
}

TEST(StorageStep, MaxPowersMatchBounds)
{
    StorageState s{10.0, 20.0, 0.2, 0.9};
    auto eta = SplitEfficiency(0.925, StorageEfficiencyMode::DischargeOnly);
    EXPECT_NEAR(MaxChargePower(s, eta, 1.0), 8.0, 1e-12);
    EXPECT_NEAR(MaxDischargePower(s, eta, 1.0), 6.0 * 0.925, 1e-12);
    auto split = SplitEfficiency(0.925, StorageEfficiencyMode::Split);
    EXPECT_NEAR(split.charge * split.discharge, 0.925, 1e-15);
}

TEST(StorageStep, RoundTripProperty)
{
    mecm::testing::Rng rng(5);
    for (auto mode : {StorageEfficiencyMode::DischargeOnly, StorageEfficiencyMode::Split})
    {
        auto eta = SplitEfficiency(0.925, mode);
        for (int trial = 0; trial < 1000; ++trial)
        {
            double cap = rng.Uniform(1.0, 500.0);
            StorageState s{rng.Uniform(0.2, 0.5) * cap, cap, 0.2, 1.0};
            double start = s.energy_kWh;
            double e = rng.Uniform(0.0, 0.4 * cap);
            // charge E of stored energy, then discharge the eta-adjusted power
            auto up = StorageStep(s, e / eta.charge, 0.0, eta, 1.0);
            auto down = StorageStep(up, 0.0, e * eta.discharge, eta, 1.0);
            EXPECT_NEAR(down.energy_kWh, start, 1e-9);
        }
    }
}

TEST(H2TankStep, Examples)
{
    EfficiencySpec eff;
    HydrogenTankState s{100.0, 619.0, 0.0, 1.0};
    EXPECT_NEAR(H2TankStep(s, 39.7, 0.0, 0.0, eff, 1.0).mass_kg, 101.0, 1e-12);
    EXPECT_EQ(H2TankStep(s, 0.0, 0.0, 0.0, eff, 1.0).mass_kg, 100.0);
    HydrogenTankState one{1.0, 619.0, 0.0, 1.0};
    EXPECT_NEAR(H2TankStep(one, 0.0, 38.906, 0.0, eff, 1.0).mass_kg, 0.0, 1e-12);
}

TEST(H2TankStep, BoundsErrors)
{
    EfficiencySpec eff;
    HydrogenTankState s{1.0, 10.0, 0.0, 1.0};
    EXPECT_THROW(H2TankStep(s, 0.0, 50.0, 0.0, eff, 1.0), BoundsError);
    EXPECT_THROW(H2TankStep(s, 400.0, 0.0, 0.0, eff, 1.0), BoundsError);
    EXPECT_NEAR(MaxTankInflow(s, 1.0), 9.0 * 39.7, 1e-9);
    EXPECT_NEAR(MaxTankOutflow(s, eff, 1.0), 39.7 * 0.98, 1e-9);
}

TEST(H2TankStep, MassConservationOverTrajectory)
{
    EfficiencySpec eff;
    mecm::testing::Rng rng(9);
    HydrogenTankState s{500.0, 1000.0, 0.0, 1.0};
    double start = s.mass_kg;
    double in = 0.0, out = 0.0;
    for (int t = 0; t < 5000; ++t)
    {
        double pin = rng.Uniform(0.0, 1.0) < 0.5 ? rng.Uniform(0.0, 200.0) : 0.0;
        double fc = rng.Uniform(0.0, 100.0);
        double st = rng.Uniform(0.0, 100.0);
        double room = MaxTankInflow(s, 1.0);
        pin = std::min(pin, room);
        double avail = MaxTankOutflow(s, eff, 1.0);
        double scale = (fc + st) > avail ? avail / (fc + st) : 1.0;
        fc *= scale;
        st *= scale;
        s = H2TankStep(s, pin, fc, st, eff, 1.0);
        in += pin;
        out += fc + st;
    }
    double expected = in / HhvH2_kWhPerKg - out / (eff.h2Tank * HhvH2_kWhPerKg);
    EXPECT_NEAR(s.mass_kg - start, expected, 1e-9);
}

TEST(FcOutputs, Examples)
{
    EfficiencySpec eff;
    auto a = FcOutputs(100.0, eff);
    EXPECT_NEAR(a.electric_kW, 50.0, 1e-12);
    EXPECT_NEAR(a.recoverableHeat_kW, 26.0, 1e-12);
    auto z = FcOutputs(0.0, eff);
    EXPECT_EQ(z.electric_kW, 0.0);
    EXPECT_EQ(z.recoverableHeat_kW, 0.0);
    auto b = FcOutputs(2.0, eff);
    EXPECT_NEAR(b.electric_kW, 1.0, 1e-12);
    EXPECT_NEAR(b.recoverableHeat_kW, 0.52, 1e-12);
}

TEST(FcOutputs, LinearAndHomogeneous)
{
    EfficiencySpec eff;
    mecm::testing::Rng rng(2);
    for (int i = 0; i < 100; ++i)
    {
        double p = rng.Uniform(0.0, 500.0);
        double a = rng.Uniform(0.0, 10.0);
        auto x = FcOutputs(a * p, eff);
        auto y = FcOutputs(p, eff);
        EXPECT_NEAR(x.electric_kW, a * y.electric_kW, 1e-9);
        EXPECT_NEAR(x.recoverableHeat_kW, a * y.recoverableHeat_kW, 1e-9);
    }
}

TEST(HotWaterPower, Examples)
{
    EfficiencySpec eff;
    EXPECT_NEAR(HotWaterPower(1000.0, 52.0, 12.0, eff), 1000.0 * 4.19 * 0.96 * 40.0 / 3600.0, 1e-12);
    EXPECT_NEAR(HotWaterPower(1000.0, 52.0, 12.0, eff), 44.693, 1e-3);
    EXPECT_EQ(HotWaterPower(0.0, 52.0, 12.0, eff), 0.0);
    EXPECT_EQ(HotWaterPower(1000.0, 12.0, 12.0, eff), 0.0);
}

TEST(HeaterBoostPower, Examples)
{
    EfficiencySpec eff;
    EXPECT_EQ(HeaterBoostPower(1000.0, 45.0, 40.0, eff), 0.0);
    EXPECT_NEAR(HeaterBoostPower(1000.0, 30.0, 40.0, eff), 1000.0 * 4.19 * 10.0 / 3600.0 / 0.97, 1e-12);
    EXPECT_NEAR(HeaterBoostPower(1000.0, 30.0, 40.0, eff), 11.999, 1e-3);
    EXPECT_EQ(HeaterBoostPower(0.0, 30.0, 40.0, eff), 0.0);
}

TEST(ApplyEfficiency, Examples)
{
    EXPECT_NEAR(ApplyEfficiency(100.0, 0.9), 90.0, 1e-12);
    EXPECT_EQ(ApplyEfficiency(37.5, 1.0), 37.5);
    EXPECT_EQ(ApplyEfficiency(0.0, 0.3), 0.0);
}

TEST(DemandMassFlow, DeliveryAtFortyDegrees)
{
    ThermalSpec th;
    // 28 K lift at c_p 4.19
    EXPECT_NEAR(DemandMassFlow(4.19 * 28.0 / 3600.0 * 1000.0, th), 1000.0, 1e-9);
}

TEST(ThermalTank, HeatIsCappedAtLimit)
{
    ThermalSpec th;
    ThermalTankState s{1000.0, 60.0};
    // 5 K headroom on 1000 kg
    double room_kWh = 1000.0 * 4.19 * 5.0 / 3600.0;
    auto r = AddTankHeat(s, room_kWh + 3.0, th, 1.0);
    EXPECT_NEAR(r.state.temperature_C, 65.0, 1e-12);
    EXPECT_NEAR(r.excess_kW, 3.0, 1e-9);
    auto none = AddTankHeat(ThermalTankState{0.0, 40.0}, 5.0, th, 1.0);
    EXPECT_EQ(none.excess_kW, 5.0);
}

TEST(ThermalTank, HotTankBlendsDownToDemand)
{
    ThermalSpec th;
    EfficiencySpec eff;
    ThermalTankState s{10000.0, 60.0};
    auto r = DrawTank(s, 20.0, th, eff, 1.0);
    EXPECT_NEAR(r.delivered_kW, 20.0, 1e-9);
    EXPECT_LT(r.state.temperature_C, 60.0);
    EXPECT_GE(r.state.temperature_C, th.inletTemp_C);
    // tank enthalpy drop covers delivery plus the outlet loss
    EXPECT_NEAR(r.tankEnergyOut_kW * eff.hotWaterTank, r.delivered_kW, 1e-9);
}

TEST(ThermalTank, LukewarmTankLeavesGap)
{
    ThermalSpec th;
    EfficiencySpec eff;
    ThermalTankState s{10000.0, 25.0};
    auto r = DrawTank(s, 20.0, th, eff, 1.0);
    EXPECT_GT(r.delivered_kW, 0.0);
    EXPECT_LT(r.delivered_kW, 20.0);
    EXPECT_LT(r.outletTemp_C, th.demandTemp_C);
}

TEST(EfficiencySpec, Validation)
{
    EfficiencySpec eff;
    EXPECT_NO_THROW(Validate(eff));
    eff.inverter = 0.0;
    EXPECT_THROW(Validate(eff), ConfigError);
    eff = {};
    eff.h2Tank = 1.2;
    EXPECT_THROW(Validate(eff), ConfigError);
}
