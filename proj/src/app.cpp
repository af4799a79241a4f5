#include "mecm/app.hpp"

#include "mecm/error.hpp"

#include <cmath>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/os.h>
#include <fmt/ostream.h>

namespace mecm
{

namespace
{

struct Context
{
    ScenarioConfig config;
    std::filesystem::path baseDir;
    std::filesystem::path outDir;
};

Context
Prepare(CommandOptions const& opt)
{
    Context ctx;
    ctx.config = LoadConfig(opt.config);
    ctx.baseDir = opt.config.parent_path();
    if (opt.seed)
    {
        ctx.config.pso.seed = *opt.seed;
    }
    if (opt.out)
    {
        ctx.outDir = *opt.out;
    }
    else
    {
        std::filesystem::path p(ctx.config.outputDir);
        ctx.outDir = p.is_absolute() ? p : ctx.baseDir / p;
    }
    std::error_code ec;
    std::filesystem::create_directories(ctx.outDir, ec);
    if (ec)
    {
        throw Error(fmt::format(
            "cannot create output directory '{}': {}", ctx.outDir.string(), ec.message()));
    }
    return ctx;
}

// Empty optional prints as blank so the column stays numeric.
std::string
Cell(std::optional<double> v)
{
    return v ? fmt::format("{}", *v) : std::string();
}

void
WriteLpsp(std::filesystem::path const& path, LpspSummary const& l)
{
    auto out = fmt::output_file(path.string());
    out.print("carrier,lpsp_pct\n");
    out.print("electricity,{}\nhot_water,{}\nhydrogen,{}\n", l.electric, l.thermal, l.h2);
}

void
WriteCostReport(
    std::filesystem::path const& path,
    CostReport const& r)
{
    auto out = fmt::output_file(path.string());
    out.print("component,units,capital_usd,replacement_usd,om_usd,salvage_usd,npc_usd\n");
    for (auto const& c : r.components)
    {
        out.print(
            "{},{},{},{},{},{},{}\n",
            EquipmentKey(c.equipment),
            c.units,
            c.capital,
            c.replacement,
            c.om,
            c.salvage,
            c.npc);
    }
    double cap = 0.0, rep = 0.0, om = 0.0, sv = 0.0;
    for (auto const& c : r.components)
    {
        cap += c.capital;
        rep += c.replacement;
        om += c.om;
        sv += c.salvage;
    }
    out.print("total,,{},{},{},{},{}\n", cap, rep, om, sv, r.totalNpc);
    out.print("annualized,,,,,,{}\n", r.annualized);
}

void
WriteLevelized(std::filesystem::path const& path, LevelizedCosts const& lc)
{
    auto out = fmt::output_file(path.string());
    out.print("metric,value\n");
    out.print("lcoe_total_nzd_per_kwh,{}\n", Cell(lc.total_perKWh));
    out.print("electricity_nzd_per_kwh,{}\n", Cell(lc.electricity_perKWh));
    out.print("hot_water_nzd_per_l,{}\n", Cell(lc.hotWater_perL));
    out.print("h2_nzd_per_kg,{}\n", Cell(lc.h2_perKg));
    out.print("attributed_electricity_usd_per_yr,{}\n", lc.attributedAnnual_usd[0]);
    out.print("attributed_heat_usd_per_yr,{}\n", lc.attributedAnnual_usd[1]);
    out.print("attributed_h2_usd_per_yr,{}\n", lc.attributedAnnual_usd[2]);
    out.print("served_electricity_kwh_per_yr,{}\n", lc.servedElectricity_kWh);
    out.print("served_heat_kwh_per_yr,{}\n", lc.servedHeat_kWh);
    out.print("served_hot_water_l_per_yr,{}\n", lc.servedHotWater_L);
    out.print("served_h2_kg_per_yr,{}\n", lc.servedH2_kg);
}

// Writes cashflows and the metrics derived from them.
void
WriteFinancials(
    std::filesystem::path const& outDir,
    CostReport const& report,
    Scenario const& scenario,
    LevelizedCosts const& lc,
    std::ostream& log)
{
    auto cf = ProjectCashflows(report, scenario.components, lc, scenario.economics);
    {
        auto out = fmt::output_file((outDir / "cashflows.csv").string());
        out.print("year,cashflow_usd\n");
        for (std::size_t y = 0; y < cf.size(); ++y)
        {
            out.print("{},{}\n", y, cf[y]);
        }
    }
    auto out = fmt::output_file((outDir / "financial_metrics.csv").string());
    out.print("metric,value\n");
    if (!(cf[0] < 0.0))
    {
        // nothing invested, nothing to pay back
        out.print("dpp_years,\nprofitability_index,\nirr,\n");
        return;
    }
    auto fm = ComputeFinancialMetrics(cf, scenario.economics.discountRate);
    out.print(
        "dpp_years,{}\n",
        std::isfinite(fm.dpp_years) ? fmt::format("{}", fm.dpp_years) : "inf");
    out.print("profitability_index,{}\n", fm.profitabilityIndex);
    out.print("irr,{}\n", Cell(fm.irr));
    fmt::print(
        log,
        "DPP {}, PI {:.3f}, IRR {}\n",
        std::isfinite(fm.dpp_years) ? fmt::format("{:.2f} y", fm.dpp_years) : "never",
        fm.profitabilityIndex,
        fm.irr ? fmt::format("{:.2f}%", 100.0 * *fm.irr) : "undefined");
}

void
WriteFitness(std::filesystem::path const& path, FitnessBreakdown const& f)
{
    auto out = fmt::output_file(path.string());
    out.print("term,value\n");
    out.print("npc_usd,{}\n", f.npc);
    out.print("lpsp_electric_pct,{}\n", f.lpsp.electric);
    out.print("lpsp_thermal_pct,{}\n", f.lpsp.thermal);
    out.print("lpsp_h2_pct,{}\n", f.lpsp.h2);
    out.print("cyclical_sc,{}\n", f.cyclical.sc);
    out.print("cyclical_battery,{}\n", f.cyclical.battery);
    out.print("cyclical_h2_tank,{}\n", f.cyclical.h2Tank);
    out.print("penalty_electric,{}\n", f.penaltyElectric);
    out.print("penalty_thermal,{}\n", f.penaltyThermal);
    out.print("penalty_h2,{}\n", f.penaltyH2);
    out.print("penalty_cyclical,{}\n", f.penaltyCyclical);
    out.print("penalized_usd,{}\n", f.penalized);
    out.print("feasible,{}\n", f.Feasible() ? 1 : 0);
}

void
WriteMatrix(std::filesystem::path const& path, MonthlyDailyProfile const& m)
{
    auto out = fmt::output_file(path.string());
    out.print("month");
    for (std::size_t h = 0; h < HoursPerDay; ++h)
    {
        out.print(",h{:02}", h);
    }
    out.print("\n");
    for (std::size_t mo = 0; mo < 12; ++mo)
    {
        out.print("{}", mo + 1);
        for (double v : m[mo])
        {
            out.print(",{}", v);
        }
        out.print("\n");
    }
}

void
PrintSummary(std::ostream& log, FitnessBreakdown const& f)
{
    fmt::print(
        log,
        "LPSP electricity {:.4f}%, hot water {:.4f}%, hydrogen {:.4f}%\n",
        f.lpsp.electric,
        f.lpsp.thermal,
        f.lpsp.h2);
    fmt::print(
        log,
        "cyclical deviation SC {:.4f}, battery {:.4f}, H2 tank {:.4f}\n",
        f.cyclical.sc,
        f.cyclical.battery,
        f.cyclical.h2Tank);
    fmt::print(log, "NPC US${:.2f}, penalized US${:.2f}\n", f.npc, f.penalized);
}

} // namespace

void
WriteMonthlyProfiles(std::filesystem::path const& outDir, ProfileSet const& set)
{
    WriteMatrix(outDir / "monthly_wind_speed.csv", MonthlyMeanDailyProfile(set.windSpeed));
    WriteMatrix(outDir / "monthly_electric_load.csv", MonthlyMeanDailyProfile(set.electric));
    WriteMatrix(outDir / "monthly_thermal_load.csv", MonthlyMeanDailyProfile(set.thermal));
    WriteMatrix(outDir / "monthly_h2_load.csv", MonthlyMeanDailyProfile(set.h2));
}

void
WriteSimulationArtifacts(
    std::filesystem::path const& outDir,
    DesignVector const& design,
    Scenario const& scenario,
    ReliabilityTargets const& targets,
    DispatchResult const& result,
    std::ostream& log)
{
    auto report = TotalNpc(design, scenario.components, scenario.economics);
    auto fitness = ScoreDispatch(result, report.totalNpc, targets);
    auto lc = ComputeLevelizedCosts(
        report, result.hours, scenario.system.thermal, scenario.economics);

    WriteDispatchCsv(outDir / "dispatch.csv", result);
    WriteLpsp(outDir / "lpsp.csv", fitness.lpsp);
    WriteCostReport(outDir / "cost_report.csv", report);
    WriteLevelized(outDir / "levelized_costs.csv", lc);
    WriteFitness(outDir / "fitness.csv", fitness);
    PrintSummary(log, fitness);
    WriteFinancials(outDir, report, scenario, lc, log);
}

void
CmdSimulate(CommandOptions const& opt, std::ostream& log)
{
    auto ctx = Prepare(opt);
    DesignVector design = opt.design ? LoadDesign(*opt.design) : StewartIslandReferenceDesign();
    CheckDesignBounds(design, ConfigBounds(ctx.config));

    auto scenario = BuildScenario(ctx.config, ctx.baseDir);
    auto result = SimulateYear(design, scenario.profiles, scenario.system, scenario.strategy);
    WriteSimulationArtifacts(ctx.outDir, design, scenario, ctx.config.targets, result, log);
    if (scenario.profiles.size() == HoursPerYear)
    {
        WriteMonthlyProfiles(ctx.outDir, LoadProfileSet(ctx.config, ctx.baseDir));
    }
    fmt::print(log, "wrote {}\n", ctx.outDir.string());
}

void
CmdOptimize(CommandOptions const& opt, std::ostream& log)
{
    auto ctx = Prepare(opt);
    auto scenario = BuildScenario(ctx.config, ctx.baseDir);
    auto bounds = ConfigBounds(ctx.config);
    fmt::print(
        log,
        "PSO: {} particles x {} iterations, seed {}\n",
        ctx.config.pso.population,
        ctx.config.pso.maxIterations,
        ctx.config.pso.seed);
    auto sizing = OptimizeDesign(scenario, ctx.config.targets, bounds, ctx.config.pso);

    SaveDesign(ctx.outDir / "best_design.json", sizing.best, &sizing.fitness);
    WriteConvergenceTrace(ctx.outDir / "convergence.csv", sizing.trace);

    auto result = SimulateYear(sizing.best, scenario.profiles, scenario.system, scenario.strategy);
    WriteSimulationArtifacts(ctx.outDir, sizing.best, scenario, ctx.config.targets, result, log);
    if (scenario.profiles.size() == HoursPerYear)
    {
        WriteMonthlyProfiles(ctx.outDir, LoadProfileSet(ctx.config, ctx.baseDir));
    }
    fmt::print(
        log,
        "{} evaluations; best design {}\n",
        sizing.evaluations,
        (ctx.outDir / "best_design.json").string());
}

void
CmdSynthH2(CommandOptions const& opt, std::ostream& log)
{
    auto ctx = Prepare(opt);
    auto series = SynthesizeH2Load(ctx.config.fleet);
    WriteHourlySeries(ctx.outDir / "h2_load.csv", series);

    auto daily = DailyH2Profile(ctx.config.fleet);
    auto out = fmt::output_file((ctx.outDir / "h2_daily_profile.csv").string());
    out.print("hour,h2_kg_per_h\n");
    for (std::size_t h = 0; h < HoursPerDay; ++h)
    {
        out.print("{},{}\n", h, daily[h]);
    }
    out.close();
    fmt::print(
        log,
        "fleet demand {:.4f} kg/day, {:.2f} kg/yr\n",
        series.sum() / static_cast<double>(DaysPerYear),
        series.sum());
}

void
CmdReport(CommandOptions const& opt, std::ostream& log)
{
    auto ctx = Prepare(opt);
    DesignVector design = opt.design ? LoadDesign(*opt.design) : StewartIslandReferenceDesign();
    auto table = opt.dispatch ? *opt.dispatch : ctx.outDir / "dispatch.csv";
    auto hours = ReadDispatchCsv(table);

    Scenario scenario;
    scenario.system = ctx.config.system;
    scenario.components = ctx.config.components;
    scenario.economics = ctx.config.economics;

    auto report = TotalNpc(design, scenario.components, scenario.economics);
    auto lc = ComputeLevelizedCosts(report, hours, scenario.system.thermal, scenario.economics);
    WriteCostReport(ctx.outDir / "cost_report.csv", report);
    WriteLevelized(ctx.outDir / "levelized_costs.csv", lc);
    fmt::print(log, "NPC US${:.2f}, annualized US${:.2f}/yr\n", report.totalNpc, report.annualized);
    if (lc.total_perKWh)
    {
        fmt::print(log, "LCOE NZ${:.4f}/kWh\n", *lc.total_perKWh);
    }
    WriteFinancials(ctx.outDir, report, scenario, lc, log);
}

int
RunCli(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multi-carrier microgrid sizing and dispatch"};
    app.require_subcommand(1);

    CommandOptions opt;
    std::string config, outDir, design, dispatch;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "scenario configuration (JSON)")->required();
        sub->add_option("--out", outDir, "output directory");
    };

    auto* simulate = app.add_subcommand("simulate", "simulate one design for a year");
    add_common(simulate);
    simulate->add_option("--design", design, "design file (JSON)");

    auto* optimize = app.add_subcommand("optimize", "size the system with PSO");
    add_common(optimize);
    auto* seedOpt = optimize->add_option("--seed", seed, "PSO seed");

    auto* synth = app.add_subcommand("synth-h2", "write the fleet H2 load profile");
    add_common(synth);

    auto* report = app.add_subcommand("report", "recompute economics from a dispatch table");
    add_common(report);
    report->add_option("--design", design, "design file (JSON)");
    report->add_option("--dispatch", dispatch, "dispatch table (default <out>/dispatch.csv)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return ExitOk;
    }
    catch (CLI::ParseError const& e)
    {
        if (e.get_exit_code() == 0)
        {
            return app.exit(e, out, err);
        }
        app.exit(e, out, err);
        return ExitConfigError;
    }

    opt.config = config;
    if (!outDir.empty())
    {
        opt.out = outDir;
    }
    if (!design.empty())
    {
        opt.design = design;
    }
    if (!dispatch.empty())
    {
        opt.dispatch = dispatch;
    }
    if (seedOpt->count() > 0)
    {
        opt.seed = seed;
    }

    try
    {
        if (simulate->parsed())
        {
            CmdSimulate(opt, out);
        }
        else if (optimize->parsed())
        {
            CmdOptimize(opt, out);
        }
        else if (synth->parsed())
        {
            CmdSynthH2(opt, out);
        }
        else
        {
            CmdReport(opt, out);
        }
    }
    catch (ConfigError const& e)
    {
        err << "config error: " << e.what() << '\n';
        return ExitConfigError;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return ExitRuntimeError;
    }
    return ExitOk;
}

} // namespace mecm
