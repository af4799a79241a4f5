#pragma once

#include "mecm/dispatch.hpp"
#include "mecm/economics.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace mecm
{

struct PsoParams
{
    int population = 45;
    int maxIterations = 300;
    double inertia = 0.7;
    double cognitive = 2.0;
    double social = 2.0;
    double velocityClamp = 0.2; // fraction of each variable's range
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency

    bool operator==(PsoParams const&) const = default;
};

void
Validate(PsoParams const& p);

struct Bounds
{
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> integral;

    std::size_t size() const { return lower.size(); }

    bool operator==(Bounds const&) const = default;
};

// Sizes agree, lower <= upper, and searched variables (lower < upper) have
// upper > 0.
void
Validate(Bounds const& b);

// [0, upper] per design variable; the three count variables are integral.
Bounds
DesignBounds(DesignVector const& upper);

// General box; lower == upper pins a variable.
Bounds
DesignBounds(DesignVector const& lower, DesignVector const& upper);

// Three times the reference capacities.
Bounds
DefaultDesignBounds();

using Objective = std::function<double(std::span<double const>)>;

// Rounds integral coordinates and clamps into the box.
std::vector<double>
SnapToBounds(std::span<double const> x, Bounds const& b);

struct PsoResult
{
    std::vector<double> best; // snapped
    double bestFitness = 0.0;
    std::vector<double> trace; // gbest after init, then after each iteration
    std::size_t evaluations = 0;
};

// Global-best PSO with per-dimension velocity clamping and reflecting walls.
// The generator is std::mt19937_64; uniforms take the top 53 bits, so a seed
// reproduces the same run on any conforming platform.
PsoResult
PsoOptimize(Bounds const& bounds, PsoParams const& params, Objective const& fitness);

struct GridResult
{
    std::vector<double> best;
    double bestFitness = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t MaxGridPoints = 1'000'000;

// Exhaustive search on lower + k * step (k >= 0, <= upper). A variable with
// step <= 0 or lower == upper is held at lower. Ties go to the
// lexicographically smallest point.
GridResult
GridSearchOracle(
    Bounds const& bounds,
    std::span<double const> steps,
    Objective const& fitness,
    std::size_t maxPoints = MaxGridPoints);

struct ReliabilityTargets
{
    double lpspElectric_pct = 0.0;
    double lpspThermal_pct = 0.0;
    double lpspH2_pct = 0.0;
    double cyclicalTolerance_pct = 1.0;
    double penaltyScale = 10.0; // per percentage point
    // Penalties multiply max(NPC, floor) so a near-empty design cannot
    // escape them by being cheap.
    double penaltyFloor_usd = 1.0e6;

    bool operator==(ReliabilityTargets const&) const = default;
};

void
Validate(ReliabilityTargets const& t);

struct FitnessBreakdown
{
    double npc = 0.0;
    LpspSummary lpsp;
    CyclicalError cyclical;
    double penaltyElectric = 0.0;
    double penaltyThermal = 0.0;
    double penaltyH2 = 0.0;
    double penaltyCyclical = 0.0;
    double penalized = 0.0;

    double TotalPenalty() const
    {
        return penaltyElectric + penaltyThermal + penaltyH2 + penaltyCyclical;
    }
    bool Feasible() const { return TotalPenalty() == 0.0; }
};

struct Scenario
{
    LoadProfiles profiles;
    SystemSpec system;
    StrategyParams strategy;
    ComponentTable components = DefaultComponentTable();
    EconomicParams economics;
};

FitnessBreakdown
ScoreDispatch(
    DispatchResult const& result,
    double npc,
    ReliabilityTargets const& targets);

FitnessBreakdown
EvaluateFitness(
    DesignVector const& design,
    Scenario const& scenario,
    ReliabilityTargets const& targets);

struct SizingResult
{
    DesignVector best;
    FitnessBreakdown fitness;
    std::vector<double> trace;
    std::size_t evaluations = 0;
};

SizingResult
OptimizeDesign(
    Scenario const& scenario,
    ReliabilityTargets const& targets,
    Bounds const& bounds,
    PsoParams const& params);

// Two columns: iteration, best penalized fitness.
void
WriteConvergenceTrace(std::filesystem::path const& path, std::span<double const> trace);

} // namespace mecm
