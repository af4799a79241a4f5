#pragma once

#include "mecm/dispatch.hpp"
#include "mecm/economics.hpp"
#include "mecm/optimizer.hpp"
#include "mecm/profiles.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace mecm
{

inline constexpr int ConfigSchemaVersion = 1;

// Profile file names as written in the config. Relative names resolve
// against the directory holding the config file.
struct ProfileSources
{
    std::string windSpeed;
    std::string electric;
    std::optional<std::string> thermal; // none: no heat demand
    Unit thermalUnit = Unit::Kilowatt;  // kW or L/h of 40 C water
    std::optional<std::string> h2;      // none: synthesized from the fleet
    std::optional<int> horizon_h;       // truncate to the first N hours

    bool operator==(ProfileSources const&) const = default;
};

struct ScenarioConfig
{
    ProfileSources profiles;
    FleetSpec fleet = StewartIslandFleet();
    ComponentTable components = DefaultComponentTable();
    EconomicParams economics;
    SystemSpec system;
    StrategyParams strategy;
    PsoParams pso;
    DesignVector lowerBounds;
    DesignVector upperBounds = DesignFromArray(DefaultDesignBounds().upper);
    ReliabilityTargets targets;
    std::string outputDir = "out";

    bool operator==(ScenarioConfig const&) const = default;
};

void
Validate(ScenarioConfig const& config);

// JSON text. Unknown keys are rejected; missing keys keep their defaults.
ScenarioConfig
ParseConfig(std::string_view text);

std::string
FormatConfig(ScenarioConfig const& config);

// Parses and validates, and checks that every referenced file exists.
ScenarioConfig
LoadConfig(std::filesystem::path const& path);

void
SaveConfig(std::filesystem::path const& path, ScenarioConfig const& config);

Bounds
ConfigBounds(ScenarioConfig const& config);

// Loads or synthesizes every profile and assembles the evaluation context.
Scenario
BuildScenario(ScenarioConfig const& config, std::filesystem::path const& baseDir);

// Un-truncated year of the four inputs, for monthly summaries.
struct ProfileSet
{
    TimeSeries windSpeed;
    TimeSeries electric;
    TimeSeries thermal;
    TimeSeries h2;
};

ProfileSet
LoadProfileSet(ScenarioConfig const& config, std::filesystem::path const& baseDir);

// {"schema_version": 1, "design": {name: value, ...}}; an optional
// "fitness" object is ignored on read.
DesignVector
ParseDesign(std::string_view text);

DesignVector
LoadDesign(std::filesystem::path const& path);

std::string
FormatDesign(DesignVector const& design, FitnessBreakdown const* fitness = nullptr);

void
SaveDesign(
    std::filesystem::path const& path,
    DesignVector const& design,
    FitnessBreakdown const* fitness = nullptr);

// Throws ConfigError naming the first variable outside [lower, upper] or
// a count that is not integral.
void
CheckDesignBounds(DesignVector const& design, Bounds const& bounds);

} // namespace mecm
