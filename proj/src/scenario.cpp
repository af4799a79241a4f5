#include "mecm/scenario.hpp"

#include "mecm/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

namespace mecm
{

using json = nlohmann::ordered_json;

namespace
{

// Reads fields out of one JSON object and rejects keys nobody asked for.
class ObjectReader
{
  public:
    ObjectReader(json const& j, std::string context)
        : j_(j), context_(std::move(context))
    {
        if (!j_.is_object())
        {
            throw ConfigError(fmt::format("{}: expected an object", context_));
        }
    }

    ~ObjectReader() noexcept(false)
    {
        if (std::uncaught_exceptions() > 0)
        {
            return;
        }
        for (auto const& [key, value] : j_.items())
        {
            if (!seen_.contains(key))
            {
                throw ConfigError(fmt::format("{}: unknown key '{}'", context_, key));
            }
        }
    }

    json const* Find(std::string const& key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string Path(std::string const& key) const
    {
        return context_ + "." + key;
    }

    template <typename T>
    void Get(std::string const& key, T& out)
    {
        if (auto const* v = Find(key))
        {
            out = Convert<T>(*v, Path(key));
        }
    }

    template <typename T>
    void Get(std::string const& key, std::optional<T>& out)
    {
        if (auto const* v = Find(key))
        {
            if (v->is_null())
            {
                out.reset();
            }
            else
            {
                out = Convert<T>(*v, Path(key));
            }
        }
    }

    template <typename T>
    static T Convert(json const& v, std::string const& where)
    {
        if constexpr (std::is_same_v<T, double>)
        {
            if (!v.is_number())
            {
                throw ConfigError(fmt::format("{}: expected a number", where));
            }
            return v.get<double>();
        }
        else if constexpr (std::is_integral_v<T>)
        {
            if (v.is_number_integer())
            {
                return v.get<T>();
            }
            if (v.is_number_float())
            {
                double d = v.get<double>();
                if (std::floor(d) == d)
                {
                    return static_cast<T>(d);
                }
            }
            throw ConfigError(fmt::format("{}: expected an integer", where));
        }
        else
        {
            if (!v.is_string())
            {
                throw ConfigError(fmt::format("{}: expected a string", where));
            }
            return v.get<std::string>();
        }
    }

  private:
    json const& j_;
    std::string context_;
    std::set<std::string> seen_;
};

json
WindowToJson(RefuelWindow const& w)
{
    if (auto const* u = std::get_if<UniformWindow>(&w))
    {
        return {{"type", "uniform"}, {"start_hour", u->startHour}, {"end_hour", u->endHour}};
    }
    auto const& n = std::get<NormalWindow>(w);
    return {{"type", "normal"},
            {"mean_hour", n.meanHour},
            {"sd_hours", n.sdHours},
            {"start_hour", n.startHour},
            {"end_hour", n.endHour}};
}

RefuelWindow
WindowFromJson(json const& j, std::string const& where)
{
    ObjectReader r(j, where);
    std::string type = "uniform";
    r.Get("type", type);
    if (type == "uniform")
    {
        UniformWindow u;
        r.Get("start_hour", u.startHour);
        r.Get("end_hour", u.endHour);
        return u;
    }
    if (type == "normal")
    {
        NormalWindow n;
        r.Get("mean_hour", n.meanHour);
        r.Get("sd_hours", n.sdHours);
        r.Get("start_hour", n.startHour);
        r.Get("end_hour", n.endHour);
        return n;
    }
    throw ConfigError(fmt::format("{}.type: '{}' is not uniform or normal", where, type));
}

json
DesignToJson(DesignVector const& d)
{
    json j = json::object();
    auto names = DesignVariableNames();
    auto values = ToArray(d);
    for (std::size_t i = 0; i < DesignDimensions; ++i)
    {
        if (i < 3)
        {
            j[std::string(names[i])] = static_cast<long long>(values[i]);
        }
        else
        {
            j[std::string(names[i])] = values[i];
        }
    }
    return j;
}

DesignVector
DesignFromJson(json const& j, std::string const& where, DesignVector base)
{
    ObjectReader r(j, where);
    auto names = DesignVariableNames();
    auto values = ToArray(base);
    for (std::size_t i = 0; i < DesignDimensions; ++i)
    {
        std::string key(names[i]);
        if (i < 3)
        {
            long long n = static_cast<long long>(values[i]);
            r.Get(key, n);
            if (n < 0 || n > 1'000'000'000)
            {
                throw ConfigError(fmt::format("{}: count out of range", r.Path(key)));
            }
            values[i] = static_cast<double>(n);
        }
        else
        {
            r.Get(key, values[i]);
        }
    }
    return DesignFromArray(values);
}

std::string_view
ModeName(StorageEfficiencyMode m)
{
    return m == StorageEfficiencyMode::Split ? "split" : "discharge_only";
}

std::string_view
ModeName(InitialStateMode m)
{
    return m == InitialStateMode::Periodic ? "periodic" : "fixed";
}

json
ToJson(ScenarioConfig const& c)
{
    json j;
    j["schema_version"] = ConfigSchemaVersion;

    json& p = j["profiles"];
    p["wind_speed"] = c.profiles.windSpeed;
    p["electric"] = c.profiles.electric;
    p["thermal"] = c.profiles.thermal ? json(*c.profiles.thermal) : json(nullptr);
    p["thermal_unit"] = ToString(c.profiles.thermalUnit);
    p["h2"] = c.profiles.h2 ? json(*c.profiles.h2) : json(nullptr);
    p["horizon_hours"] = c.profiles.horizon_h ? json(*c.profiles.horizon_h) : json(nullptr);

    json fleet = json::array();
    for (auto const& vc : c.fleet.classes)
    {
        fleet.push_back({{"name", vc.name},
                         {"count", vc.count},
                         {"tank_capacity_kg", vc.tankCapacity_kg},
                         {"refuel_period_days", vc.refuelPeriod_days},
                         {"fill_fraction_low", vc.fillFractionLow},
                         {"fill_fraction_high", vc.fillFractionHigh},
                         {"window", WindowToJson(vc.window)}});
    }
    j["fleet"] = fleet;

    json& comps = j["components"];
    for (std::size_t i = 0; i < EquipmentCount; ++i)
    {
        auto const& s = c.components[i];
        comps[std::string(EquipmentKey(static_cast<Equipment>(i)))] = {
            {"name", s.name},
            {"unit_size", s.unitSize},
            {"capital_cost", s.capitalCost},
            {"replacement_cost", s.replacementCost},
            {"om_cost", s.omCost},
            {"efficiency", s.efficiency},
            {"lifetime_years", s.lifetime_years}};
    }

    auto const& e = c.economics;
    j["economics"] = {{"discount_rate", e.discountRate},
                      {"horizon_years", e.horizon_years},
                      {"nzd_per_usd", e.nzdPerUsd},
                      {"tariffs",
                       {{"electricity_nzd_per_kwh", e.tariffs.electricity_nzdPerKWh},
                        {"hot_water_nzd_per_l", e.tariffs.hotWater_nzdPerL},
                        {"h2_nzd_per_kg", e.tariffs.h2_nzdPerKg}}}};

    auto const& s = c.system;
    auto const& ef = s.efficiency;
    j["system"] = {
        {"turbine",
         {{"cut_in_mps", s.turbine.cutIn_mps},
          {"rated_mps", s.turbine.rated_mps},
          {"cut_out_mps", s.turbine.cutOut_mps},
          {"rated_kw", s.turbine.rated_kW}}},
        {"efficiency",
         {{"fuel_cell_electric", ef.fuelCellElectric},
          {"fuel_cell_heat_ratio", ef.fuelCellHeatRatio},
          {"fuel_cell_recoverable", ef.fuelCellRecoverable},
          {"h2_tank", ef.h2Tank},
          {"hybrid_storage", ef.hybridStorage},
          {"heat_exchanger", ef.heatExchanger},
          {"inline_heater", ef.inlineHeater},
          {"h2_station", ef.h2Station},
          {"electrolyser", ef.electrolyser},
          {"inverter", ef.inverter},
          {"hot_water_tank", ef.hotWaterTank}}},
        {"thermal",
         {{"inlet_temp_c", s.thermal.inletTemp_C},
          {"demand_temp_c", s.thermal.demandTemp_C},
          {"max_tank_temp_c", s.thermal.maxTankTemp_C},
          {"initial_tank_temp_c", s.thermal.initialTankTemp_C}}},
        {"limits",
         {{"battery_soc_min", s.limits.batterySocMin},
          {"battery_soc_max", s.limits.batterySocMax},
          {"sc_soc_min", s.limits.scSocMin},
          {"sc_soc_max", s.limits.scSocMax},
          {"tank_soc_min", s.limits.tankSocMin},
          {"tank_soc_max", s.limits.tankSocMax}}},
        {"sc_module_kwh", s.scModule_kWh},
        {"battery_pack_kwh", s.batteryPack_kWh},
        {"storage_efficiency_mode", ModeName(s.storageMode)}};

    auto const& st = c.strategy;
    j["strategy"] = {{"filter1_window_h", st.filter1Window_h},
                     {"filter2_window_h", st.filter2Window_h},
                     {"initial_sc_fraction", st.initialScFraction},
                     {"initial_battery_fraction", st.initialBatteryFraction},
                     {"initial_tank_fraction", st.initialTankFraction},
                     {"initial_state", ModeName(st.initialMode)}};

    auto const& pso = c.pso;
    j["pso"] = {{"population", pso.population},
                {"max_iterations", pso.maxIterations},
                {"inertia", pso.inertia},
                {"cognitive", pso.cognitive},
                {"social", pso.social},
                {"velocity_clamp", pso.velocityClamp},
                {"seed", pso.seed},
                {"threads", pso.threads}};

    j["bounds"] = {{"lower", DesignToJson(c.lowerBounds)},
                   {"upper", DesignToJson(c.upperBounds)}};

    auto const& t = c.targets;
    j["targets"] = {{"lpsp_electric_pct", t.lpspElectric_pct},
                    {"lpsp_thermal_pct", t.lpspThermal_pct},
                    {"lpsp_h2_pct", t.lpspH2_pct},
                    {"cyclical_tolerance_pct", t.cyclicalTolerance_pct},
                    {"penalty_scale", t.penaltyScale},
                    {"penalty_floor_usd", t.penaltyFloor_usd}};

    j["output_dir"] = c.outputDir;
    return j;
}

ScenarioConfig
FromJson(json const& j)
{
    ScenarioConfig c;
    ObjectReader root(j, "config");

    int version = 0;
    if (root.Find("schema_version") == nullptr)
    {
        throw ConfigError("config: schema_version is required");
    }
    root.Get("schema_version", version);
    if (version != ConfigSchemaVersion)
    {
        throw ConfigError(fmt::format(
            "config: schema_version {} is not supported (expected {})",
            version,
            ConfigSchemaVersion));
    }

    if (auto const* p = root.Find("profiles"))
    {
        ObjectReader r(*p, "config.profiles");
        r.Get("wind_speed", c.profiles.windSpeed);
        r.Get("electric", c.profiles.electric);
        r.Get("thermal", c.profiles.thermal);
        std::string unit(ToString(c.profiles.thermalUnit));
        r.Get("thermal_unit", unit);
        c.profiles.thermalUnit = UnitFromString(unit);
        r.Get("h2", c.profiles.h2);
        r.Get("horizon_hours", c.profiles.horizon_h);
    }

    if (auto const* f = root.Find("fleet"))
    {
        if (!f->is_array())
        {
            throw ConfigError("config.fleet: expected an array");
        }
        c.fleet.classes.clear();
        for (std::size_t i = 0; i < f->size(); ++i)
        {
            std::string where = fmt::format("config.fleet[{}]", i);
            ObjectReader r((*f)[i], where);
            VehicleClass vc;
            r.Get("name", vc.name);
            r.Get("count", vc.count);
            r.Get("tank_capacity_kg", vc.tankCapacity_kg);
            r.Get("refuel_period_days", vc.refuelPeriod_days);
            r.Get("fill_fraction_low", vc.fillFractionLow);
            r.Get("fill_fraction_high", vc.fillFractionHigh);
            if (auto const* w = r.Find("window"))
            {
                vc.window = WindowFromJson(*w, where + ".window");
            }
            c.fleet.classes.push_back(std::move(vc));
        }
    }

    if (auto const* comps = root.Find("components"))
    {
        ObjectReader r(*comps, "config.components");
        for (std::size_t i = 0; i < EquipmentCount; ++i)
        {
            std::string key(EquipmentKey(static_cast<Equipment>(i)));
            if (auto const* row = r.Find(key))
            {
                auto& s = c.components[i];
                ObjectReader rr(*row, r.Path(key));
                rr.Get("name", s.name);
                rr.Get("unit_size", s.unitSize);
                rr.Get("capital_cost", s.capitalCost);
                rr.Get("replacement_cost", s.replacementCost);
                rr.Get("om_cost", s.omCost);
                rr.Get("efficiency", s.efficiency);
                rr.Get("lifetime_years", s.lifetime_years);
            }
        }
    }

    if (auto const* e = root.Find("economics"))
    {
        ObjectReader r(*e, "config.economics");
        r.Get("discount_rate", c.economics.discountRate);
        r.Get("horizon_years", c.economics.horizon_years);
        r.Get("nzd_per_usd", c.economics.nzdPerUsd);
        if (auto const* t = r.Find("tariffs"))
        {
            ObjectReader rt(*t, "config.economics.tariffs");
            rt.Get("electricity_nzd_per_kwh", c.economics.tariffs.electricity_nzdPerKWh);
            rt.Get("hot_water_nzd_per_l", c.economics.tariffs.hotWater_nzdPerL);
            rt.Get("h2_nzd_per_kg", c.economics.tariffs.h2_nzdPerKg);
        }
    }

    if (auto const* sys = root.Find("system"))
    {
        auto& s = c.system;
        ObjectReader r(*sys, "config.system");
        if (auto const* t = r.Find("turbine"))
        {
            ObjectReader rt(*t, "config.system.turbine");
            rt.Get("cut_in_mps", s.turbine.cutIn_mps);
            rt.Get("rated_mps", s.turbine.rated_mps);
            rt.Get("cut_out_mps", s.turbine.cutOut_mps);
            rt.Get("rated_kw", s.turbine.rated_kW);
        }
        if (auto const* t = r.Find("efficiency"))
        {
            auto& ef = s.efficiency;
            ObjectReader rt(*t, "config.system.efficiency");
            rt.Get("fuel_cell_electric", ef.fuelCellElectric);
            rt.Get("fuel_cell_heat_ratio", ef.fuelCellHeatRatio);
            rt.Get("fuel_cell_recoverable", ef.fuelCellRecoverable);
            rt.Get("h2_tank", ef.h2Tank);
            rt.Get("hybrid_storage", ef.hybridStorage);
            rt.Get("heat_exchanger", ef.heatExchanger);
            rt.Get("inline_heater", ef.inlineHeater);
            rt.Get("h2_station", ef.h2Station);
            rt.Get("electrolyser", ef.electrolyser);
            rt.Get("inverter", ef.inverter);
            rt.Get("hot_water_tank", ef.hotWaterTank);
        }
        if (auto const* t = r.Find("thermal"))
        {
            ObjectReader rt(*t, "config.system.thermal");
            rt.Get("inlet_temp_c", s.thermal.inletTemp_C);
            rt.Get("demand_temp_c", s.thermal.demandTemp_C);
            rt.Get("max_tank_temp_c", s.thermal.maxTankTemp_C);
            rt.Get("initial_tank_temp_c", s.thermal.initialTankTemp_C);
        }
        if (auto const* t = r.Find("limits"))
        {
            ObjectReader rt(*t, "config.system.limits");
            rt.Get("battery_soc_min", s.limits.batterySocMin);
            rt.Get("battery_soc_max", s.limits.batterySocMax);
            rt.Get("sc_soc_min", s.limits.scSocMin);
            rt.Get("sc_soc_max", s.limits.scSocMax);
            rt.Get("tank_soc_min", s.limits.tankSocMin);
            rt.Get("tank_soc_max", s.limits.tankSocMax);
        }
        r.Get("sc_module_kwh", s.scModule_kWh);
        r.Get("battery_pack_kwh", s.batteryPack_kWh);
        std::string mode(ModeName(s.storageMode));
        r.Get("storage_efficiency_mode", mode);
        if (mode == "discharge_only")
        {
            s.storageMode = StorageEfficiencyMode::DischargeOnly;
        }
        else if (mode == "split")
        {
            s.storageMode = StorageEfficiencyMode::Split;
        }
        else
        {
            throw ConfigError(fmt::format(
                "config.system.storage_efficiency_mode: '{}' is not discharge_only or split",
                mode));
        }
    }

    if (auto const* st = root.Find("strategy"))
    {
        auto& s = c.strategy;
        ObjectReader r(*st, "config.strategy");
        r.Get("filter1_window_h", s.filter1Window_h);
        r.Get("filter2_window_h", s.filter2Window_h);
        r.Get("initial_sc_fraction", s.initialScFraction);
        r.Get("initial_battery_fraction", s.initialBatteryFraction);
        r.Get("initial_tank_fraction", s.initialTankFraction);
        std::string mode(ModeName(s.initialMode));
        r.Get("initial_state", mode);
        if (mode == "fixed")
        {
            s.initialMode = InitialStateMode::Fixed;
        }
        else if (mode == "periodic")
        {
            s.initialMode = InitialStateMode::Periodic;
        }
        else
        {
            throw ConfigError(fmt::format(
                "config.strategy.initial_state: '{}' is not fixed or periodic", mode));
        }
    }

    if (auto const* p = root.Find("pso"))
    {
        ObjectReader r(*p, "config.pso");
        r.Get("population", c.pso.population);
        r.Get("max_iterations", c.pso.maxIterations);
        r.Get("inertia", c.pso.inertia);
        r.Get("cognitive", c.pso.cognitive);
        r.Get("social", c.pso.social);
        r.Get("velocity_clamp", c.pso.velocityClamp);
        if (auto const* seed = r.Find("seed"))
        {
            if (!seed->is_number_unsigned())
            {
                throw ConfigError("config.pso.seed: expected a non-negative integer");
            }
            c.pso.seed = seed->get<std::uint64_t>();
        }
        r.Get("threads", c.pso.threads);
    }

    if (auto const* b = root.Find("bounds"))
    {
        ObjectReader r(*b, "config.bounds");
        if (auto const* lo = r.Find("lower"))
        {
            c.lowerBounds = DesignFromJson(*lo, "config.bounds.lower", c.lowerBounds);
        }
        if (auto const* hi = r.Find("upper"))
        {
            c.upperBounds = DesignFromJson(*hi, "config.bounds.upper", c.upperBounds);
        }
    }

    if (auto const* t = root.Find("targets"))
    {
        ObjectReader r(*t, "config.targets");
        r.Get("lpsp_electric_pct", c.targets.lpspElectric_pct);
        r.Get("lpsp_thermal_pct", c.targets.lpspThermal_pct);
        r.Get("lpsp_h2_pct", c.targets.lpspH2_pct);
        r.Get("cyclical_tolerance_pct", c.targets.cyclicalTolerance_pct);
        r.Get("penalty_scale", c.targets.penaltyScale);
        r.Get("penalty_floor_usd", c.targets.penaltyFloor_usd);
    }

    root.Get("output_dir", c.outputDir);
    return c;
}

json
ParseJson(std::string_view text, std::string_view what)
{
    try
    {
        return json::parse(text);
    }
    catch (json::exception const& e)
    {
        throw ConfigError(fmt::format("{}: {}", what, e.what()));
    }
}

std::string
ReadText(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw ConfigError(fmt::format("cannot open '{}'", path.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void
WriteText(std::filesystem::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw Error(fmt::format("cannot write '{}'", path.string()));
    }
    out << text;
    if (!out)
    {
        throw Error(fmt::format("write to '{}' failed", path.string()));
    }
}

std::filesystem::path
Resolve(std::filesystem::path const& baseDir, std::string const& name)
{
    std::filesystem::path p(name);
    return p.is_absolute() ? p : baseDir / p;
}

void
RequireFile(std::filesystem::path const& path, std::string_view what)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
    {
        throw ConfigError(fmt::format("{} file '{}' not found", what, path.string()));
    }
}

std::vector<double>
Head(TimeSeries const& s, std::size_t n)
{
    return {s.values().begin(), s.values().begin() + static_cast<std::ptrdiff_t>(n)};
}

} // namespace

void
Validate(ScenarioConfig const& c)
{
    if (c.profiles.windSpeed.empty() || c.profiles.electric.empty())
    {
        throw ConfigError("config.profiles: wind_speed and electric are required");
    }
    if (c.profiles.thermalUnit != Unit::Kilowatt
        && c.profiles.thermalUnit != Unit::LitrePerHour)
    {
        throw ConfigError("config.profiles.thermal_unit must be kW or L/h");
    }
    if (c.profiles.horizon_h
        && (*c.profiles.horizon_h < 1
            || *c.profiles.horizon_h > static_cast<int>(HoursPerYear)))
    {
        throw ConfigError("config.profiles.horizon_hours must lie in [1, 8760]");
    }
    Validate(c.fleet);
    for (auto const& s : c.components)
    {
        Validate(s);
    }
    Validate(c.economics);
    Validate(c.system);
    Validate(c.strategy);
    Validate(c.pso);
    Validate(ConfigBounds(c));
    Validate(c.targets);
}

ScenarioConfig
ParseConfig(std::string_view text)
{
    auto c = FromJson(ParseJson(text, "config"));
    Validate(c);
    return c;
}

std::string
FormatConfig(ScenarioConfig const& config)
{
    return ToJson(config).dump(2) + "\n";
}

ScenarioConfig
LoadConfig(std::filesystem::path const& path)
{
    auto c = ParseConfig(ReadText(path));
    auto base = path.parent_path();
    RequireFile(Resolve(base, c.profiles.windSpeed), "wind speed profile");
    RequireFile(Resolve(base, c.profiles.electric), "electric load profile");
    if (c.profiles.thermal)
    {
        RequireFile(Resolve(base, *c.profiles.thermal), "thermal load profile");
    }
    if (c.profiles.h2)
    {
        RequireFile(Resolve(base, *c.profiles.h2), "H2 load profile");
    }
    return c;
}

void
SaveConfig(std::filesystem::path const& path, ScenarioConfig const& config)
{
    WriteText(path, FormatConfig(config));
}

Bounds
ConfigBounds(ScenarioConfig const& config)
{
    return DesignBounds(config.lowerBounds, config.upperBounds);
}

ProfileSet
LoadProfileSet(ScenarioConfig const& c, std::filesystem::path const& baseDir)
{
    auto wind = LoadHourlySeries(Resolve(baseDir, c.profiles.windSpeed), Unit::MetrePerSecond);
    auto elec = LoadHourlySeries(Resolve(baseDir, c.profiles.electric), Unit::Kilowatt);

    TimeSeries thermal = TimeSeries::Constant(0.0, Unit::Kilowatt, "thermal");
    if (c.profiles.thermal)
    {
        auto raw = LoadHourlySeries(Resolve(baseDir, *c.profiles.thermal), c.profiles.thermalUnit);
        if (c.profiles.thermalUnit == Unit::LitrePerHour)
        {
            // L/h of water delivered at the demand temperature
            double lift = c.system.thermal.demandTemp_C - c.system.thermal.inletTemp_C;
            std::vector<double> kw(raw.values().begin(), raw.values().end());
            for (auto& v : kw)
            {
                v = v * WaterCp_kJPerKgC * lift / 3600.0;
            }
            thermal = TimeSeries(std::move(kw), Unit::Kilowatt, raw.label());
        }
        else
        {
            thermal = raw;
        }
    }

    TimeSeries h2 = c.profiles.h2
        ? LoadHourlySeries(Resolve(baseDir, *c.profiles.h2), Unit::KilogramPerHour)
        : SynthesizeH2Load(c.fleet);
    return {std::move(wind), std::move(elec), std::move(thermal), std::move(h2)};
}

Scenario
BuildScenario(ScenarioConfig const& c, std::filesystem::path const& baseDir)
{
    auto set = LoadProfileSet(c, baseDir);
    std::size_t n = c.profiles.horizon_h ? static_cast<std::size_t>(*c.profiles.horizon_h)
                                         : HoursPerYear;
    Scenario s;
    s.profiles.windSpeed_mps = Head(set.windSpeed, n);
    s.profiles.electric_kW = Head(set.electric, n);
    s.profiles.thermal_kW = Head(set.thermal, n);
    s.profiles.h2_kgPerH = Head(set.h2, n);
    s.system = c.system;
    s.strategy = c.strategy;
    s.components = c.components;
    s.economics = c.economics;
    return s;
}

DesignVector
ParseDesign(std::string_view text)
{
    auto j = ParseJson(text, "design");
    ObjectReader r(j, "design file");
    int version = 0;
    r.Get("schema_version", version);
    if (version != ConfigSchemaVersion)
    {
        throw ConfigError(fmt::format(
            "design file: schema_version {} is not supported", version));
    }
    auto const* d = r.Find("design");
    if (d == nullptr)
    {
        throw ConfigError("design file: missing 'design' object");
    }
    r.Find("fitness");
    // every variable must be present
    for (auto name : DesignVariableNames())
    {
        if (!d->is_object() || !d->contains(std::string(name)))
        {
            throw ConfigError(fmt::format("design file: missing '{}'", name));
        }
    }
    return DesignFromJson(*d, "design", DesignVector{});
}

DesignVector
LoadDesign(std::filesystem::path const& path)
{
    return ParseDesign(ReadText(path));
}

std::string
FormatDesign(DesignVector const& design, FitnessBreakdown const* fitness)
{
    json j;
    j["schema_version"] = ConfigSchemaVersion;
    j["design"] = DesignToJson(design);
    if (fitness != nullptr)
    {
        auto const& f = *fitness;
        j["fitness"] = {{"npc_usd", f.npc},
                        {"penalized_usd", f.penalized},
                        {"feasible", f.Feasible()},
                        {"lpsp_electric_pct", f.lpsp.electric},
                        {"lpsp_thermal_pct", f.lpsp.thermal},
                        {"lpsp_h2_pct", f.lpsp.h2},
                        {"cyclical_sc", f.cyclical.sc},
                        {"cyclical_battery", f.cyclical.battery},
                        {"cyclical_h2_tank", f.cyclical.h2Tank}};
    }
    return j.dump(2) + "\n";
}

void
SaveDesign(
    std::filesystem::path const& path,
    DesignVector const& design,
    FitnessBreakdown const* fitness)
{
    WriteText(path, FormatDesign(design, fitness));
}

void
CheckDesignBounds(DesignVector const& design, Bounds const& bounds)
{
    auto x = ToArray(design);
    auto names = DesignVariableNames();
    for (std::size_t i = 0; i < DesignDimensions; ++i)
    {
        if (!(x[i] >= bounds.lower[i] && x[i] <= bounds.upper[i]))
        {
            throw ConfigError(fmt::format(
                "design variable {} = {} lies outside [{}, {}]",
                names[i],
                x[i],
                bounds.lower[i],
                bounds.upper[i]));
        }
    }
}

} // namespace mecm
