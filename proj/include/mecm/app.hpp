#pragma once

#include "mecm/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mecm
{

inline constexpr int ExitOk = 0;
inline constexpr int ExitConfigError = 2;
inline constexpr int ExitRuntimeError = 3;

struct CommandOptions
{
    std::filesystem::path config;
    std::optional<std::filesystem::path> out;    // default: config output_dir
    std::optional<std::filesystem::path> design; // simulate, report
    std::optional<std::filesystem::path> dispatch; // report input table
    std::optional<std::uint64_t> seed;
};

// Each command writes its tables under the output directory and a short
// summary to `log`. Errors propagate as exceptions; RunCommand maps them
// to exit codes.
void
CmdSimulate(CommandOptions const& opt, std::ostream& log);

void
CmdOptimize(CommandOptions const& opt, std::ostream& log);

void
CmdSynthH2(CommandOptions const& opt, std::ostream& log);

void
CmdReport(CommandOptions const& opt, std::ostream& log);

// Parses argv (subcommand first) and runs it. Returns the process exit code.
int
RunCli(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

// Tables written for one simulated design.
void
WriteSimulationArtifacts(
    std::filesystem::path const& outDir,
    DesignVector const& design,
    Scenario const& scenario,
    ReliabilityTargets const& targets,
    DispatchResult const& result,
    std::ostream& log);

void
WriteMonthlyProfiles(std::filesystem::path const& outDir, ProfileSet const& set);

} // namespace mecm
