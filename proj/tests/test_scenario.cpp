#include "mecm/app.hpp"
#include "mecm/error.hpp"
#include "mecm/scenario.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace mecm;
namespace fs = std::filesystem;

namespace
{

fs::path const ScenarioDir = MECM_SCENARIO_DIR;

std::string const Minimal =
    R"({"schema_version": 1, "profiles": {"wind_speed": "w.csv", "electric": "e.csv"})";

std::string
WithMinimal(std::string const& extra)
{
    return Minimal + ", " + extra + "}";
}

std::string
ReadAll(fs::path const& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliRun
{
    int code = -1;
    std::string stderrText;
};

CliRun
RunMecm(std::string const& args, fs::path const& workDir)
{
    auto errFile = workDir / "stderr.txt";
    std::string cmd = std::string("\"") + MECM_CLI_PATH + "\" " + args + " > \""
        + (workDir / "stdout.txt").string() + "\" 2> \"" + errFile.string() + "\"";
    int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.stderrText = ReadAll(errFile);
    return r;
}

std::size_t
LineCount(fs::path const& p)
{
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
    {
        ++n;
    }
    return n;
}

} // namespace

TEST(Config, FormatParseRoundTrip)
{
    ScenarioConfig c;
    c.profiles.windSpeed = "w.csv";
    c.profiles.electric = "e.csv";
    c.profiles.thermal = "t.csv";
    c.profiles.thermalUnit = Unit::LitrePerHour;
    c.profiles.horizon_h = 500;
    c.economics.discountRate = 0.08;
    c.system.storageMode = StorageEfficiencyMode::Split;
    c.strategy.initialMode = InitialStateMode::Periodic;
    c.pso.seed = 123456789012345ull;
    c.targets.lpspH2_pct = 5.0;
    c.upperBounds.windTurbines = 40;
    c.outputDir = "results";
    auto text = FormatConfig(c);
    EXPECT_EQ(ParseConfig(text), c);
    EXPECT_EQ(FormatConfig(ParseConfig(text)), text);
}

TEST(Config, BundledConfigsLoad)
{
    auto c = LoadConfig(ScenarioDir / "config.json");
    EXPECT_EQ(c.strategy.initialMode, InitialStateMode::Periodic);
    EXPECT_EQ(c.fleet.classes.size(), StewartIslandFleet().classes.size());
    auto toy = LoadConfig(ScenarioDir / "toy_config.json");
    EXPECT_EQ(toy.profiles.horizon_h, 168);
    auto s = BuildScenario(toy, ScenarioDir);
    EXPECT_EQ(s.profiles.size(), 168u);
    for (double h : s.profiles.thermal_kW)
    {
        EXPECT_EQ(h, 0.0);
    }
    for (double h : s.profiles.h2_kgPerH)
    {
        EXPECT_EQ(h, 0.0);
    }
}

TEST(Config, RejectsUnknownKeysAndMissingVersion)
{
    EXPECT_NO_THROW(ParseConfig(Minimal + "}"));
    EXPECT_THROW(ParseConfig(WithMinimal(R"("bogus": 3)")), ConfigError);
    EXPECT_THROW(ParseConfig(WithMinimal(R"("pso": {"popsize": 3})")), ConfigError);
    EXPECT_THROW(ParseConfig(WithMinimal(R"("pso": {"population": "many"})")), ConfigError);
    EXPECT_THROW(ParseConfig(R"({"profiles": {"wind_speed": "w", "electric": "e"}})"),
                 ConfigError);
    EXPECT_THROW(
        ParseConfig(R"({"schema_version": 2, "profiles": {"wind_speed": "w", "electric": "e"}})"),
        ConfigError);
    EXPECT_THROW(ParseConfig("{not json"), ConfigError);
}

TEST(Config, ValidationErrors)
{
    auto c = ParseConfig(Minimal + "}");
    c.pso.population = 1;
    EXPECT_THROW(Validate(c), ConfigError);
    c.pso.population = 10;
    c.lowerBounds.windTurbines = 100;
    EXPECT_THROW(Validate(c), ConfigError);
}

TEST(Config, LitrePerHourThermalIsConverted)
{
    auto dir = mecm::testing::TempDir("lph");
    std::vector<std::string> w, e, t;
    for (int i = 0; i < 8760; ++i)
    {
        w.push_back("5");
        e.push_back("10");
        t.push_back("100");
    }
    mecm::testing::WriteLines(dir / "w.csv", w);
    mecm::testing::WriteLines(dir / "e.csv", e);
    mecm::testing::WriteLines(dir / "t.csv", t);
    ScenarioConfig c;
    c.profiles.windSpeed = "w.csv";
    c.profiles.electric = "e.csv";
    c.profiles.thermal = "t.csv";
    c.profiles.thermalUnit = Unit::LitrePerHour;
    c.profiles.horizon_h = 24;
    c.fleet.classes.clear();
    auto s = BuildScenario(c, dir);
    EXPECT_NEAR(s.profiles.thermal_kW[0], 100.0 * 4.19 * 28.0 / 3600.0, 1e-9);
}

TEST(Design, RoundTripAndErrors)
{
    auto d = StewartIslandReferenceDesign();
    EXPECT_EQ(ParseDesign(FormatDesign(d)), d);
    EXPECT_EQ(LoadDesign(ScenarioDir / "reference_design.json"), d);
    FitnessBreakdown fb;
    fb.npc = 123.0;
    EXPECT_EQ(ParseDesign(FormatDesign(d, &fb)), d);
    EXPECT_THROW(ParseDesign(R"({"schema_version": 1, "design": {}})"), ConfigError);
    EXPECT_THROW(ParseDesign(R"({"schema_version": 1})"), ConfigError);
}

TEST(Design, BoundsCheckNamesVariable)
{
    auto d = StewartIslandReferenceDesign();
    d.fuelCell_kW = 1e6;
    try
    {
        CheckDesignBounds(d, DefaultDesignBounds());
        FAIL() << "expected ConfigError";
    }
    catch (ConfigError const& e)
    {
        EXPECT_NE(std::string(e.what()).find("fuel_cell_kw"), std::string::npos);
    }
    EXPECT_NO_THROW(CheckDesignBounds(StewartIslandReferenceDesign(), DefaultDesignBounds()));
}

TEST(Cli, SimulateWritesFullYear)
{
    auto dir = mecm::testing::TempDir("cli_sim");
    auto r = RunMecm("simulate --config \"" + (ScenarioDir / "config.json").string()
                         + "\" --design \"" + (ScenarioDir / "reference_design.json").string()
                         + "\" --out \"" + (dir / "out").string() + "\"",
                     dir);
    ASSERT_EQ(r.code, ExitOk) << r.stderrText;
    EXPECT_EQ(LineCount(dir / "out" / "dispatch.csv"), 8761u);
    for (auto name : {"lpsp.csv", "cost_report.csv", "levelized_costs.csv", "fitness.csv",
                      "cashflows.csv", "financial_metrics.csv", "monthly_wind_speed.csv"})
    {
        EXPECT_TRUE(fs::exists(dir / "out" / name)) << name;
    }
    auto rep = RunMecm("report --config \"" + (ScenarioDir / "config.json").string()
                           + "\" --out \"" + (dir / "out").string() + "\"",
                       dir);
    EXPECT_EQ(rep.code, ExitOk) << rep.stderrText;
}

TEST(Cli, SynthH2WritesProfile)
{
    auto dir = mecm::testing::TempDir("cli_h2");
    auto r = RunMecm("synth-h2 --config \"" + (ScenarioDir / "config.json").string()
                         + "\" --out \"" + dir.string() + "\"",
                     dir);
    ASSERT_EQ(r.code, ExitOk) << r.stderrText;
    EXPECT_TRUE(fs::exists(dir / "h2_load.csv"));
    EXPECT_TRUE(fs::exists(dir / "h2_daily_profile.csv"));
}

TEST(Cli, MissingProfileIsConfigError)
{
    auto dir = mecm::testing::TempDir("cli_missing");
    auto cfg = LoadConfig(ScenarioDir / "toy_config.json");
    cfg.profiles.windSpeed = "no_such_wind.csv";
    cfg.profiles.electric = (ScenarioDir / "electric_load.csv").string();
    SaveConfig(dir / "c.json", cfg);
    auto r = RunMecm("simulate --config \"" + (dir / "c.json").string() + "\"", dir);
    EXPECT_EQ(r.code, ExitConfigError);
    EXPECT_NE(r.stderrText.find("no_such_wind.csv"), std::string::npos) << r.stderrText;
}

TEST(Cli, BadInputsAreConfigErrors)
{
    auto dir = mecm::testing::TempDir("cli_bad");
    auto base = LoadConfig(ScenarioDir / "toy_config.json");
    base.profiles.windSpeed = (ScenarioDir / "wind_speed.csv").string();
    base.profiles.electric = (ScenarioDir / "electric_load.csv").string();

    auto small = base;
    small.pso.population = 1;
    std::ofstream(dir / "pop1.json") << FormatConfig(small);
    auto r = RunMecm("optimize --config \"" + (dir / "pop1.json").string() + "\" --out \""
                         + (dir / "o").string() + "\"",
                     dir);
    EXPECT_EQ(r.code, ExitConfigError) << r.stderrText;

    SaveConfig(dir / "toy.json", base);
    r = RunMecm("simulate --config \"" + (dir / "toy.json").string() + "\" --design \""
                    + (ScenarioDir / "reference_design.json").string() + "\" --out \""
                    + (dir / "o").string() + "\"",
                dir);
    EXPECT_EQ(r.code, ExitConfigError);
    EXPECT_NE(r.stderrText.find("wind_turbines"), std::string::npos) << r.stderrText;

    r = RunMecm("simulate", dir);
    EXPECT_EQ(r.code, ExitConfigError);
    r = RunMecm("frobnicate --config x", dir);
    EXPECT_EQ(r.code, ExitConfigError);

    std::ofstream(dir / "broken.json") << "{\"schema_version\": 1, \"pso\": ";
    r = RunMecm("simulate --config \"" + (dir / "broken.json").string() + "\"", dir);
    EXPECT_EQ(r.code, ExitConfigError);
}

TEST(Cli, InProcessEntryPoint)
{
    std::ostringstream out, err;
    char const* argv[] = {"mecm", "--help"};
    EXPECT_EQ(RunCli(2, argv, out, err), ExitOk);
    EXPECT_NE(out.str().find("simulate"), std::string::npos);
}
