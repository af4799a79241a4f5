// Writes synthetic hourly wind speed, electric load and hot-water load
// profiles for the bundled island scenario. The shapes are smooth monthly and
// diurnal patterns with autocorrelated noise; nothing here is measured data.

#include "mecm/profiles.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>

#include <CLI11.hpp>
#include <fmt/core.h>

namespace
{

class Gaussian
{
  public:
    explicit Gaussian(std::uint64_t seed) : engine_(seed) {}

    double operator()()
    {
        // Box-Muller on 53-bit uniforms so the output does not depend on the
        // standard library's distribution implementation.
        double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
        double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::mt19937_64 engine_;
};

// Smooth periodic bump centred at `peak` hours with the given width.
double
Bump(double hour, double peak, double width)
{
    double d = std::remainder(hour - peak, 24.0);
    return std::exp(-0.5 * d * d / (width * width));
}

double
Seasonal(std::size_t month, double peakMonth, double amplitude)
{
    double phase = 2.0 * std::numbers::pi * (static_cast<double>(month) - peakMonth) / 12.0;
    return 1.0 + amplitude * std::cos(phase);
}

struct Options
{
    std::filesystem::path outDir = ".";
    std::uint64_t seed = 2019;
    double windMean_mps = 11.0;
    double windSigma = 0.35;
    double windPersistence = 0.9;
    double electricMean_kW = 150.0;
    double hotWater_LPerDay = 17600.0;
};

std::vector<double>
WindSpeed(Options const& o, Gaussian& g)
{
    std::vector<double> v(mecm::HoursPerYear);
    double z = 0.0;
    double innovation = std::sqrt(1.0 - o.windPersistence * o.windPersistence);
    for (std::size_t t = 0; t < v.size(); ++t)
    {
        std::size_t month = mecm::MonthOfHour(t);
        double hour = static_cast<double>(t % mecm::HoursPerDay);
        // windiest in spring, calmest in late summer, breezier afternoons
        double shape = Seasonal(month, 9.5, 0.1)
            * (0.92 + 0.16 * Bump(hour, 14.0, 4.0));
        z = o.windPersistence * z + innovation * g();
        double s = o.windSigma;
        v[t] = o.windMean_mps * shape * std::exp(s * z - 0.5 * s * s);
    }
    return v;
}

std::vector<double>
ElectricLoad(Options const& o, Gaussian& g)
{
    std::vector<double> v(mecm::HoursPerYear);
    double z = 0.0;
    double sum = 0.0;
    for (std::size_t t = 0; t < v.size(); ++t)
    {
        std::size_t month = mecm::MonthOfHour(t);
        double hour = static_cast<double>(t % mecm::HoursPerDay);
        // space heating lifts the winter months and their evening peak
        double winter = Seasonal(month, 6.5, 1.0) * 0.5;
        double daily = 0.55 + 0.35 * Bump(hour, 8.0, 1.5)
            + (0.6 + 0.3 * winter) * Bump(hour, 18.5, 2.2)
            + 0.15 * Bump(hour, 13.0, 3.0);
        z = 0.8 * z + 0.6 * g();
        v[t] = Seasonal(month, 6.5, 0.22) * daily * (1.0 + 0.05 * z);
        sum += v[t];
    }
    double scale = o.electricMean_kW * static_cast<double>(v.size()) / sum;
    for (auto& x : v)
    {
        x = std::max(0.0, x * scale);
    }
    return v;
}

std::vector<double>
HotWaterLoad(Options const& o, Gaussian& g)
{
    // mean power of the daily volume heated from 12 C to 40 C
    double meanKw = o.hotWater_LPerDay * 4.19 * 28.0 / 3600.0 / 24.0;
    std::vector<double> v(mecm::HoursPerYear);
    double z = 0.0;
    double sum = 0.0;
    for (std::size_t t = 0; t < v.size(); ++t)
    {
        std::size_t month = mecm::MonthOfHour(t);
        double hour = static_cast<double>(t % mecm::HoursPerDay);
        double daily = 0.15 + 1.6 * Bump(hour, 7.5, 1.3)
            + 1.1 * Bump(hour, 20.0, 1.8) + 0.3 * Bump(hour, 13.0, 2.5);
        z = 0.6 * z + 0.8 * g();
        v[t] = Seasonal(month, 6.5, 0.1) * daily * (1.0 + 0.08 * z);
        sum += v[t];
    }
    double scale = meanKw * static_cast<double>(v.size()) / sum;
    for (auto& x : v)
    {
        x = std::max(0.0, x * scale);
    }
    return v;
}

} // namespace

int
main(int argc, char** argv)
{
    Options o;
    std::string outDir = o.outDir.string();
    CLI::App app{"Generate synthetic hourly profiles"};
    app.add_option("--out", outDir, "output directory");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--wind-mean", o.windMean_mps, "mean wind speed scale [m/s]");
    app.add_option("--wind-sigma", o.windSigma, "log-normal spread of wind speed");
    app.add_option("--wind-persistence", o.windPersistence, "hourly AR(1) coefficient");
    app.add_option("--electric-mean", o.electricMean_kW, "annual mean electric load [kW]");
    app.add_option("--hot-water", o.hotWater_LPerDay, "hot water use [L/day]");
    CLI11_PARSE(app, argc, argv);
    o.outDir = outDir;

    try
    {
        std::filesystem::create_directories(o.outDir);
        Gaussian g(o.seed);
        using mecm::TimeSeries;
        using mecm::Unit;
        TimeSeries wind(WindSpeed(o, g), Unit::MetrePerSecond, "wind_speed");
        TimeSeries elec(ElectricLoad(o, g), Unit::Kilowatt, "electric_load");
        TimeSeries heat(HotWaterLoad(o, g), Unit::Kilowatt, "thermal_load");
        mecm::WriteHourlySeries(o.outDir / "wind_speed.csv", wind);
        mecm::WriteHourlySeries(o.outDir / "electric_load.csv", elec);
        mecm::WriteHourlySeries(o.outDir / "thermal_load.csv", heat);
        fmt::print(
            "mean wind {:.3f} m/s, mean load {:.2f} kW, mean heat {:.2f} kW\n",
            wind.sum() / 8760.0,
            elec.sum() / 8760.0,
            heat.sum() / 8760.0);
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
