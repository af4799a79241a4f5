#include "mecm/error.hpp"
#include "mecm/profiles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace mecm;
using mecm::testing::TempDir;
using mecm::testing::WriteLines;

namespace
{

std::vector<std::string>
Zeros(std::size_t n)
{
    return std::vector<std::string>(n, "0");
}

} // namespace

TEST(LoadHourlySeries, ZerosFile)
{
    auto dir = TempDir("zeros");
    WriteLines(dir / "z.csv", Zeros(8760));
    auto s = LoadHourlySeries(dir / "z.csv", Unit::Kilowatt);
    EXPECT_EQ(s.size(), 8760u);
    EXPECT_EQ(s.sum(), 0.0);
    EXPECT_EQ(s.unit(), Unit::Kilowatt);
}

TEST(LoadHourlySeries, ShortFileIsLengthError)
{
    auto dir = TempDir("short");
    WriteLines(dir / "s.csv", Zeros(8759));
    try
    {
        LoadHourlySeries(dir / "s.csv", Unit::Kilowatt);
        FAIL() << "expected LengthError";
    }
    catch (LengthError const& e)
    {
        EXPECT_EQ(e.actual(), 8759u);
        EXPECT_EQ(e.expected(), 8760u);
    }
}

TEST(LoadHourlySeries, NegativeRowIsValueErrorWithRow)
{
    auto dir = TempDir("neg");
    auto lines = Zeros(8760);
    lines[41] = "-3.1";
    WriteLines(dir / "n.csv", lines);
    try
    {
        LoadHourlySeries(dir / "n.csv", Unit::Kilowatt);
        FAIL() << "expected ValueError";
    }
    catch (ValueError const& e)
    {
        EXPECT_EQ(e.row(), 42u);
    }
}

TEST(LoadHourlySeries, RowIndexIgnoresHeader)
{
    auto dir = TempDir("hdr");
    auto lines = Zeros(8760);
    lines[41] = "nan";
    lines.insert(lines.begin(), "load [kW]");
    WriteLines(dir / "h.csv", lines);
    try
    {
        LoadHourlySeries(dir / "h.csv", Unit::Kilowatt);
        FAIL() << "expected ValueError";
    }
    catch (ValueError const& e)
    {
        EXPECT_EQ(e.row(), 42u);
    }
}

TEST(LoadHourlySeries, HeaderAndBlankLinesSkipped)
{
    auto dir = TempDir("blank");
    std::vector<std::string> lines{"speed"};
    for (int i = 0; i < 8760; ++i)
    {
        lines.push_back(i == 5 ? "2.5" : "1");
        if (i == 100)
        {
            lines.push_back("");
        }
    }
    WriteLines(dir / "b.csv", lines);
    auto s = LoadHourlySeries(dir / "b.csv", Unit::MetrePerSecond);
    EXPECT_DOUBLE_EQ(s[5], 2.5);
    EXPECT_DOUBLE_EQ(s.sum(), 8759.0 + 2.5);
}

TEST(LoadHourlySeries, MissingFileNamesPath)
{
    auto path = TempDir("missing") / "nope.csv";
    try
    {
        LoadHourlySeries(path, Unit::Kilowatt);
        FAIL() << "expected ConfigError";
    }
    catch (ConfigError const& e)
    {
        EXPECT_NE(std::string(e.what()).find("nope.csv"), std::string::npos);
    }
}

TEST(LoadHourlySeries, WriteRoundTripIsExact)
{
    auto dir = TempDir("rt");
    mecm::testing::Rng rng(7);
    std::vector<double> v(8760);
    for (auto& x : v)
    {
        x = rng.Uniform(0.0, 1000.0);
    }
    TimeSeries s(v, Unit::LitrePerHour, "hw");
    WriteHourlySeries(dir / "rt.csv", s);
    auto back = LoadHourlySeries(dir / "rt.csv", Unit::LitrePerHour);
    EXPECT_EQ(back.data(), v);
}

TEST(TimeSeries, RejectsWrongLengthAndBadValues)
{
    EXPECT_THROW(TimeSeries(std::vector<double>(10), Unit::Kilowatt), LengthError);
    std::vector<double> v(8760, 1.0);
    v[9] = std::numeric_limits<double>::infinity();
    try
    {
        TimeSeries(v, Unit::Kilowatt);
        FAIL();
    }
    catch (ValueError const& e)
    {
        EXPECT_EQ(e.row(), 10u);
    }
}

TEST(MonthlyMeanDailyProfile, ConstantSeries)
{
    auto m = MonthlyMeanDailyProfile(TimeSeries::Constant(5.0, Unit::Kilowatt));
    for (auto const& row : m)
    {
        for (double v : row)
        {
            EXPECT_DOUBLE_EQ(v, 5.0);
        }
    }
}

TEST(MonthlyMeanDailyProfile, HourOfDayIndex)
{
    std::vector<double> v(8760);
    for (std::size_t t = 0; t < v.size(); ++t)
    {
        v[t] = static_cast<double>(t % 24);
    }
    auto m = MonthlyMeanDailyProfile(TimeSeries(v, Unit::Kilowatt));
    for (auto const& row : m)
    {
        for (std::size_t h = 0; h < 24; ++h)
        {
            EXPECT_DOUBLE_EQ(row[h], static_cast<double>(h));
        }
    }
}

TEST(MonthlyMeanDailyProfile, SingleJanuaryValue)
{
    std::vector<double> v(8760, 0.0);
    v[0] = 10.0;
    auto m = MonthlyMeanDailyProfile(TimeSeries(v, Unit::Kilowatt));
    EXPECT_NEAR(m[0][0], 10.0 / 31.0, 1e-12);
    EXPECT_NEAR(m[0][0], 0.3226, 1e-4);
    EXPECT_EQ(m[1][0], 0.0);
    EXPECT_EQ(m[0][1], 0.0);
}

TEST(MonthlyMeanDailyProfile, DayWeightedMeanEqualsSeriesMean)
{
    mecm::testing::Rng rng(3);
    std::vector<double> v(8760);
    for (auto& x : v)
    {
        x = rng.Uniform(0.0, 50.0);
    }
    TimeSeries s(v, Unit::Kilowatt);
    auto m = MonthlyMeanDailyProfile(s);
    double weighted = 0.0;
    for (std::size_t mo = 0; mo < 12; ++mo)
    {
        for (double x : m[mo])
        {
            weighted += x * static_cast<double>(DaysPerMonth[mo]);
        }
    }
    EXPECT_NEAR(weighted / 8760.0, s.sum() / 8760.0, 1e-9);
}

TEST(MonthOfHour, Boundaries)
{
    EXPECT_EQ(MonthOfHour(0), 0u);
    EXPECT_EQ(MonthOfHour(31 * 24 - 1), 0u);
    EXPECT_EQ(MonthOfHour(31 * 24), 1u);
    EXPECT_EQ(MonthOfHour(8759), 11u);
}

TEST(SynthesizeH2Load, EmptyFleetIsZero)
{
    auto s = SynthesizeH2Load(FleetSpec{});
    EXPECT_EQ(s.size(), 8760u);
    EXPECT_EQ(s.sum(), 0.0);
    EXPECT_EQ(s.unit(), Unit::KilogramPerHour);
}

TEST(SynthesizeH2Load, FerriesUniformWindow)
{
    FleetSpec fleet{{{"ferries", 5, 31.7, 2, UniformWindow{1, 6}, 0.05, 1.0}}};
    double daily = 5 * 31.7 * 0.95 / 2;
    EXPECT_NEAR(fleet.classes[0].DailyDemand_kg(), 75.2875, 1e-12);
    auto s = SynthesizeH2Load(fleet);
    for (std::size_t day : {0u, 100u, 364u})
    {
        for (std::size_t h = 0; h < 24; ++h)
        {
            double v = s[day * 24 + h];
            if (h >= 1 && h <= 6)
            {
                EXPECT_NEAR(v, daily / 6.0, 1e-12);
                EXPECT_NEAR(v, 12.5479, 1e-4);
            }
            else
            {
                EXPECT_EQ(v, 0.0) << "hour " << h;
            }
        }
    }
}

TEST(SynthesizeH2Load, DefaultFleetPerClassAndAnnual)
{
    auto fleet = StewartIslandFleet();
    ASSERT_EQ(fleet.classes.size(), 4u);
    // independent per-class arithmetic: count * capacity * 0.95 / period
    std::vector<double> expected{
        5 * 31.7 * 0.95 / 2, 30 * 1.5 * 0.95 / 3, 5 * 32.9 * 0.95 / 4, 5 * 8.2 * 0.95 / 5};
    EXPECT_NEAR(expected[0], 75.2875, 1e-9);
    EXPECT_NEAR(expected[1], 14.25, 1e-9);
    EXPECT_NEAR(expected[2], 39.06875, 1e-9);
    EXPECT_NEAR(expected[3], 7.79, 1e-9);
    for (std::size_t i = 0; i < 4; ++i)
    {
        EXPECT_NEAR(fleet.classes[i].DailyDemand_kg(), expected[i], 1e-12);
    }
    double daily = std::accumulate(expected.begin(), expected.end(), 0.0);
    auto s = SynthesizeH2Load(fleet);
    EXPECT_NEAR(s.sum(), daily * 365.0, 1e-9 * daily * 365.0);
    EXPECT_NEAR(s.sum(), 49784.6, 0.1);
}

TEST(SynthesizeH2Load, NormalWindowStaysInsideAndPeaksMidday)
{
    NormalWindow w{14.5, 2.5, 9, 20};
    auto weights = WindowWeights(w);
    double total = 0.0;
    for (std::size_t h = 0; h < 24; ++h)
    {
        total += weights[h];
        if (h < 9 || h > 20)
        {
            EXPECT_EQ(weights[h], 0.0);
        }
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_GT(weights[14], weights[9]);
    EXPECT_NEAR(weights[14], weights[15], 1e-12);
}

TEST(SynthesizeH2Load, EmptyUniformWindowIsConfigError)
{
    FleetSpec fleet{{{"x", 1, 10.0, 1, UniformWindow{6, 6}, 0.0, 1.0}}};
    EXPECT_THROW(SynthesizeH2Load(fleet), ConfigError);
    fleet.classes[0].window = UniformWindow{7, 3};
    EXPECT_THROW(SynthesizeH2Load(fleet), ConfigError);
}

TEST(SynthesizeH2Load, RejectsMalformedClasses)
{
    VehicleClass ok{"x", 1, 10.0, 1, UniformWindow{1, 6}, 0.0, 1.0};
    EXPECT_NO_THROW(Validate(ok));
    auto bad = ok;
    bad.fillFractionLow = 0.9;
    bad.fillFractionHigh = 0.5;
    EXPECT_THROW(Validate(bad), ConfigError);
    bad = ok;
    bad.tankCapacity_kg = 0.0;
    EXPECT_THROW(Validate(bad), ConfigError);
    bad = ok;
    bad.refuelPeriod_days = 0;
    EXPECT_THROW(Validate(bad), ConfigError);
    bad = ok;
    bad.window = UniformWindow{20, 24};
    EXPECT_THROW(Validate(bad), ConfigError);
    bad = ok;
    bad.count = -1;
    EXPECT_THROW(Validate(bad), ConfigError);
}

TEST(SynthesizeH2Load, ConservationOverRandomFleets)
{
    mecm::testing::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial)
    {
        FleetSpec fleet;
        double daily = 0.0;
        int classes = rng.Int(1, 5);
        for (int c = 0; c < classes; ++c)
        {
            VehicleClass vc;
            vc.name = "c";
            vc.count = rng.Int(0, 40);
            vc.tankCapacity_kg = rng.Uniform(0.5, 50.0);
            vc.refuelPeriod_days = rng.Int(1, 7);
            vc.fillFractionLow = rng.Uniform(0.0, 0.5);
            vc.fillFractionHigh = rng.Uniform(0.6, 1.0);
            int start = rng.Int(0, 20);
            int end = rng.Int(start + 1, 23);
            if (rng.Uniform(0.0, 1.0) < 0.5)
            {
                vc.window = UniformWindow{start, end};
            }
            else
            {
                vc.window = NormalWindow{rng.Uniform(start, end), rng.Uniform(0.5, 4.0), start, end};
            }
            daily += vc.count * vc.tankCapacity_kg * (vc.fillFractionHigh - vc.fillFractionLow)
                / vc.refuelPeriod_days;
            fleet.classes.push_back(vc);
        }
        auto s = SynthesizeH2Load(fleet);
        double expected = 365.0 * daily;
        EXPECT_NEAR(s.sum(), expected, 1e-9 * std::max(1.0, expected));
    }
}
