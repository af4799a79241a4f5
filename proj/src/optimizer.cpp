#include "mecm/optimizer.hpp"

#include "mecm/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <fmt/core.h>
#include <fmt/os.h>

namespace mecm
{

void
Validate(PsoParams const& p)
{
    if (p.population < 2)
    {
        throw ConfigError(
            fmt::format("PSO population must be >= 2 (got {})", p.population));
    }
    if (p.maxIterations < 1)
    {
        throw ConfigError("PSO needs at least one iteration");
    }
    if (!(p.inertia > 0.0 && p.inertia < 1.0))
    {
        throw ConfigError("PSO inertia weight must lie in (0, 1)");
    }
    if (!(p.cognitive > 0.0 && p.social > 0.0))
    {
        throw ConfigError("PSO learning factors must be positive");
    }
    if (!(p.velocityClamp > 0.0 && p.velocityClamp <= 1.0))
    {
        throw ConfigError("PSO velocity clamp must lie in (0, 1]");
    }
    if (p.threads < 0)
    {
        throw ConfigError("PSO thread count must be >= 0");
    }
}

void
Validate(Bounds const& b)
{
    if (b.upper.size() != b.lower.size() || b.integral.size() != b.lower.size()
        || b.lower.empty())
    {
        throw ConfigError("bounds vectors must be non-empty and equally sized");
    }
    for (std::size_t i = 0; i < b.size(); ++i)
    {
        if (!std::isfinite(b.lower[i]) || !std::isfinite(b.upper[i])
            || b.lower[i] > b.upper[i])
        {
            throw ConfigError(fmt::format(
                "bounds for variable {} need finite lower <= upper", i));
        }
        if (b.lower[i] < b.upper[i] && !(b.upper[i] > 0.0))
        {
            throw ConfigError(fmt::format(
                "searched variable {} needs a positive upper bound", i));
        }
    }
}

Bounds
DesignBounds(DesignVector const& upper)
{
    return DesignBounds(DesignVector{}, upper);
}

Bounds
DesignBounds(DesignVector const& lower, DesignVector const& upper)
{
    auto lo = ToArray(lower);
    auto hi = ToArray(upper);
    Bounds b;
    b.lower.assign(lo.begin(), lo.end());
    b.upper.assign(hi.begin(), hi.end());
    b.integral.assign(DesignDimensions, false);
    b.integral[0] = b.integral[1] = b.integral[2] = true;
    return b;
}

Bounds
DefaultDesignBounds()
{
    auto ref = ToArray(StewartIslandReferenceDesign());
    for (auto& x : ref)
    {
        x = std::round(x * 3.0 * 1000.0) / 1000.0;
    }
    return DesignBounds(DesignFromArray(ref));
}

std::vector<double>
SnapToBounds(std::span<double const> x, Bounds const& b)
{
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        if (b.integral[j])
        {
            out[j] = std::round(out[j]);
            // keep rounded integers inside the box
            if (out[j] > b.upper[j])
            {
                out[j] = std::floor(b.upper[j]);
            }
            if (out[j] < b.lower[j])
            {
                out[j] = std::ceil(b.lower[j]);
            }
        }
        out[j] = std::clamp(out[j], b.lower[j], b.upper[j]);
    }
    return out;
}

namespace
{

class Uniform01
{
  public:
    explicit Uniform01(std::uint64_t seed) : engine_(seed) {}

    double operator()()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

// Evaluates fitness at every point, writing results by index.
void
EvaluateAll(
    std::vector<std::vector<double>> const& points,
    Bounds const& bounds,
    Objective const& fitness,
    std::vector<double>& out,
    int threads)
{
    std::size_t n = points.size();
    out.resize(n);
    auto work = [&](std::size_t i) {
        auto snapped = SnapToBounds(points[i], bounds);
        out[i] = fitness(snapped);
    };
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            work(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    work(i);
                }
                catch (...)
                {
                    if (!failed.exchange(true))
                    {
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    pool.clear();
    if (failure)
    {
        std::rethrow_exception(failure);
    }
}

} // namespace

PsoResult
PsoOptimize(Bounds const& bounds, PsoParams const& params, Objective const& fitness)
{
    Validate(bounds);
    Validate(params);
    std::size_t const dims = bounds.size();
    std::size_t const pop = static_cast<std::size_t>(params.population);
    Uniform01 rand(params.seed);

    std::vector<double> vmax(dims);
    for (std::size_t j = 0; j < dims; ++j)
    {
        vmax[j] = params.velocityClamp * (bounds.upper[j] - bounds.lower[j]);
    }

    std::vector<std::vector<double>> x(pop, std::vector<double>(dims));
    std::vector<std::vector<double>> v(pop, std::vector<double>(dims));
    for (std::size_t i = 0; i < pop; ++i)
    {
        for (std::size_t j = 0; j < dims; ++j)
        {
            x[i][j] = bounds.lower[j] + rand() * (bounds.upper[j] - bounds.lower[j]);
            v[i][j] = (2.0 * rand() - 1.0) * vmax[j];
        }
    }

    PsoResult result;
    std::vector<double> f;
    EvaluateAll(x, bounds, fitness, f, params.threads);
    result.evaluations += pop;
    auto pbest = x;
    auto pbestF = f;
    std::size_t g = 0;
    for (std::size_t i = 1; i < pop; ++i)
    {
        if (pbestF[i] < pbestF[g])
        {
            g = i;
        }
    }
    std::vector<double> gbest = pbest[g];
    double gbestF = pbestF[g];
    result.trace.push_back(gbestF);

    for (int iter = 0; iter < params.maxIterations; ++iter)
    {
        for (std::size_t i = 0; i < pop; ++i)
        {
            for (std::size_t j = 0; j < dims; ++j)
            {
                double r1 = rand();
                double r2 = rand();
                double vel = params.inertia * v[i][j]
                    + params.cognitive * r1 * (pbest[i][j] - x[i][j])
                    + params.social * r2 * (gbest[j] - x[i][j]);
                vel = std::clamp(vel, -vmax[j], vmax[j]);
                double pos = x[i][j] + vel;
                if (pos < bounds.lower[j])
                {
                    pos = bounds.lower[j];
                    vel = -0.5 * vel;
                }
                else if (pos > bounds.upper[j])
                {
                    pos = bounds.upper[j];
                    vel = -0.5 * vel;
                }
                x[i][j] = pos;
                v[i][j] = vel;
            }
        }
        EvaluateAll(x, bounds, fitness, f, params.threads);
        result.evaluations += pop;
        for (std::size_t i = 0; i < pop; ++i)
        {
            if (f[i] < pbestF[i])
            {
                pbestF[i] = f[i];
                pbest[i] = x[i];
            }
        }
        for (std::size_t i = 0; i < pop; ++i)
        {
            if (pbestF[i] < gbestF)
            {
                gbestF = pbestF[i];
                gbest = pbest[i];
            }
        }
        result.trace.push_back(gbestF);
    }
    result.best = SnapToBounds(gbest, bounds);
    result.bestFitness = gbestF;
    return result;
}

GridResult
GridSearchOracle(
    Bounds const& bounds,
    std::span<double const> steps,
    Objective const& fitness,
    std::size_t maxPoints)
{
    Validate(bounds);
    std::size_t const dims = bounds.size();
    if (steps.size() != dims)
    {
        throw ConfigError("grid step count must match the bounds");
    }
    std::vector<std::size_t> counts(dims, 1);
    double total = 1.0;
    for (std::size_t j = 0; j < dims; ++j)
    {
        double range = bounds.upper[j] - bounds.lower[j];
        if (steps[j] > 0.0 && range > 0.0)
        {
            counts[j] = static_cast<std::size_t>(std::floor(range / steps[j] + 1e-9)) + 1;
        }
        total *= static_cast<double>(counts[j]);
    }
    if (total > static_cast<double>(maxPoints))
    {
        throw ConfigError(fmt::format(
            "grid has {} points, limit is {}", total, maxPoints));
    }
    GridResult result;
    std::vector<std::size_t> k(dims, 0);
    std::vector<double> point(dims);
    bool first = true;
    while (true)
    {
        for (std::size_t j = 0; j < dims; ++j)
        {
            point[j] = std::min(
                bounds.upper[j], bounds.lower[j] + static_cast<double>(k[j]) * steps[j]);
            if (counts[j] == 1)
            {
                point[j] = bounds.lower[j];
            }
        }
        double value = fitness(point);
        ++result.evaluations;
        if (first || value < result.bestFitness)
        {
            result.bestFitness = value;
            result.best = point;
            first = false;
        }
        // odometer with the last variable fastest
        std::size_t j = dims;
        while (j > 0)
        {
            --j;
            if (++k[j] < counts[j])
            {
                break;
            }
            k[j] = 0;
            if (j == 0)
            {
                return result;
            }
        }
    }
}

void
Validate(ReliabilityTargets const& t)
{
    for (double v : {t.lpspElectric_pct, t.lpspThermal_pct, t.lpspH2_pct})
    {
        if (!(v >= 0.0 && v <= 100.0))
        {
            throw ConfigError("LPSP targets must lie in [0, 100] percent");
        }
    }
    if (!(t.cyclicalTolerance_pct >= 0.0) || !(t.penaltyScale > 0.0)
        || !(t.penaltyFloor_usd >= 0.0))
    {
        throw ConfigError(
            "cyclical tolerance and penalty floor must be >= 0, penalty scale > 0");
    }
}

FitnessBreakdown
ScoreDispatch(DispatchResult const& result, double npc, ReliabilityTargets const& t)
{
    FitnessBreakdown fb;
    fb.npc = npc;
    fb.lpsp = ComputeLpsp(result);
    fb.cyclical = CyclicalStateError(result);
    double lambda = t.penaltyScale;
    fb.penaltyElectric = lambda * std::max(0.0, fb.lpsp.electric - t.lpspElectric_pct);
    fb.penaltyThermal = lambda * std::max(0.0, fb.lpsp.thermal - t.lpspThermal_pct);
    fb.penaltyH2 = lambda * std::max(0.0, fb.lpsp.h2 - t.lpspH2_pct);
    for (double dev : {fb.cyclical.sc, fb.cyclical.battery, fb.cyclical.h2Tank})
    {
        fb.penaltyCyclical += lambda * std::max(0.0, 100.0 * dev - t.cyclicalTolerance_pct);
    }
    fb.penalized = npc + std::max(npc, t.penaltyFloor_usd) * fb.TotalPenalty();
    return fb;
}

FitnessBreakdown
EvaluateFitness(
    DesignVector const& design, Scenario const& s, ReliabilityTargets const& targets)
{
    auto dispatch = SimulateYear(design, s.profiles, s.system, s.strategy);
    double npc = TotalNpc(design, s.components, s.economics).totalNpc;
    return ScoreDispatch(dispatch, npc, targets);
}

SizingResult
OptimizeDesign(
    Scenario const& scenario,
    ReliabilityTargets const& targets,
    Bounds const& bounds,
    PsoParams const& params)
{
    if (bounds.size() != DesignDimensions)
    {
        throw ConfigError("design bounds must cover all eleven variables");
    }
    Validate(scenario.profiles);
    auto objective = [&](std::span<double const> x) {
        return EvaluateFitness(DesignFromArray(x), scenario, targets).penalized;
    };
    auto pso = PsoOptimize(bounds, params, objective);
    SizingResult out;
    out.best = DesignFromArray(pso.best);
    out.fitness = EvaluateFitness(out.best, scenario, targets);
    out.trace = std::move(pso.trace);
    out.evaluations = pso.evaluations;
    return out;
}

void
WriteConvergenceTrace(std::filesystem::path const& path, std::span<double const> trace)
{
    auto out = fmt::output_file(path.string());
    out.print("iteration,best_penalized_fitness\n");
    for (std::size_t i = 0; i < trace.size(); ++i)
    {
        out.print("{},{}\n", i, trace[i]);
    }
}

} // namespace mecm
