#include "swarmplan/coevolution.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace swarmplan {

namespace {

struct IslandResult {
    std::vector<double> best_formation;
    Evaluation inner_best;
    double sigma_h_max = 0.0;
};

// Runs one inner formation PSO for a fixed swarm velocity.
IslandResult run_island(const ScenarioParams& scenario, const CoevolutionConfig& config,
                        double v_y, std::uint64_t island_seed, double sigma_h_max,
                        const std::vector<double>* warm_best) {
    PsoConfig inner;
    inner.dimension = 2 * scenario.uav_count;
    inner.population = config.inner_population;
    inner.iterations = config.inner_iterations;
    inner.c1 = config.c1;
    inner.c2 = config.c2;
    inner.w_start = config.w_start;
    inner.w_end = config.w_end;
    inner.v_pso_max = config.v_pso_max;
    auto bounds = formation_bounds(scenario);
    inner.lower = std::move(bounds.lower);
    inner.upper = std::move(bounds.upper);
    inner.seed = island_seed;
    inner.sigma_h_cap = sigma_h_max;
    if (warm_best != nullptr && !warm_best->empty()) inner.seeded_positions = {*warm_best};

    BatchFitness fitness = [&](const std::vector<std::vector<double>>& positions,
                               double snapshot) {
        std::vector<Evaluation> out;
        out.reserve(positions.size());
        for (const auto& pos : positions)
            out.push_back(fitness_formation(pos, v_y, snapshot, scenario));
        return out;
    };

    Pso pso(inner, fitness);
    for (int k = 0; k < inner.iterations; ++k) pso.step(fitness);
    return {pso.best_position(), pso.best(), pso.sigma_h_max()};
}

void run_parallel(int count, int workers, const std::function<void(int)>& task) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    };
    std::vector<std::thread> pool;
    int n = std::min(workers, count);
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

void CoevolutionConfig::validate() const {
    if (inner_population < 1 || inner_iterations < 1)
        throw std::invalid_argument("coevolution: inner budgets must be positive");
    if (outer_population < 1 || outer_iterations < 1)
        throw std::invalid_argument("coevolution: outer budgets must be positive");
    if (worker_count < 1) throw std::invalid_argument("coevolution: worker_count must be positive");
}

Solution coevolution_solve(const ScenarioParams& scenario, const CoevolutionConfig& config) {
    scenario.validate();
    config.validate();

    const int d2 = config.outer_population;
    const auto t0 = std::chrono::steady_clock::now();

    // Outer particles hold v_y only; power components follow from the
    // closed-form allocation each generation.
    std::vector<double> v(static_cast<std::size_t>(d2));
    std::vector<double> v_pso(static_cast<std::size_t>(d2));
    {
        Rng init(derive_seed(config.seed, {0}));
        for (auto& x : v) x = init.uniform(scenario.v_min, scenario.v_max);
        for (auto& x : v_pso) x = init.uniform(0.0, config.v_pso_max);
    }
    std::vector<Rng> streams;
    streams.reserve(static_cast<std::size_t>(d2));
    for (int i = 0; i < d2; ++i) streams.emplace_back(derive_seed(config.seed, {1, static_cast<std::uint64_t>(i)}));

    struct OuterBest {
        double v_y = 0.0;
        double fitness = std::numeric_limits<double>::infinity();
        std::vector<double> formation;
        Evaluation inner;
        PowerPlan plan;
    };
    std::vector<OuterBest> local(static_cast<std::size_t>(d2));
    OuterBest global;
    double sigma_h_max = config.sigma_h_cap;

    Solution solution;

    for (int k2 = 1; k2 <= config.outer_iterations; ++k2) {
        if (k2 > 1) {
            // Outer velocity update with reflecting wall on [v_min, v_max].
            double w = config.outer_iterations == 1
                           ? config.w_start
                           : config.w_start + (config.w_end - config.w_start) *
                                 std::min(1.0, static_cast<double>(k2 - 2) /
                                                   (config.outer_iterations - 1));
            for (int i = 0; i < d2; ++i) {
                double r1 = streams[static_cast<std::size_t>(i)].uniform();
                double r2 = streams[static_cast<std::size_t>(i)].uniform();
                double& vel = v_pso[static_cast<std::size_t>(i)];
                double& pos = v[static_cast<std::size_t>(i)];
                vel = w * vel + config.c1 * r1 * (local[static_cast<std::size_t>(i)].v_y - pos) +
                      config.c2 * r2 * (global.v_y - pos);
                if (pos + vel < scenario.v_min || pos + vel > scenario.v_max) vel = -vel;
                pos += vel;
                if (pos < scenario.v_min) {
                    pos = scenario.v_min;
                    vel = 0.0;
                } else if (pos > scenario.v_max) {
                    pos = scenario.v_max;
                    vel = 0.0;
                }
            }
        }

        // Evolve all islands for this generation in parallel.
        std::vector<IslandResult> islands(static_cast<std::size_t>(d2));
        const double snapshot = sigma_h_max;
        run_parallel(d2, config.worker_count, [&](int i) {
            std::uint64_t island_seed =
                derive_seed(config.seed, {2, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k2)});
            const std::vector<double>* warm =
                (config.warm_start && !local[static_cast<std::size_t>(i)].formation.empty())
                    ? &local[static_cast<std::size_t>(i)].formation
                    : nullptr;
            islands[static_cast<std::size_t>(i)] =
                run_island(scenario, config, v[static_cast<std::size_t>(i)], island_seed, snapshot, warm);
        });

        // Outer fitness per particle, then best tracking and sigma merge.
        for (int i = 0; i < d2; ++i) {
            auto& island = islands[static_cast<std::size_t>(i)];
            sigma_h_max = std::max(sigma_h_max, island.sigma_h_max);

            Formation f = Formation::from_vector(island.best_formation);
            // Extreme infeasible formations can push the beam edge past the
            // horizon; the link model is then undefined and the particle is
            // scored as an unevaluable power plan rather than aborting.
            PowerPlan plan;
            Evaluation outer;
            try {
                plan = allocate_power(f, v[static_cast<std::size_t>(i)], scenario);
                outer = fitness_outer(plan, island.inner_best.fitness, snapshot);
            } catch (const std::domain_error&) {
                plan = PowerPlan{};
                plan.g10 = 1e12;
                outer.feasible = false;
                outer.violation = plan.g10;
                outer.sigma_h = std::numeric_limits<double>::infinity();
                outer.fitness = snapshot + plan.g10;
            }

            auto& lb = local[static_cast<std::size_t>(i)];
            if (outer.fitness < lb.fitness) {
                lb = {v[static_cast<std::size_t>(i)], outer.fitness, island.best_formation,
                      island.inner_best, plan};
            }
            if (outer.fitness < global.fitness) {
                global = {v[static_cast<std::size_t>(i)], outer.fitness, island.best_formation,
                          island.inner_best, plan};
            }
        }

        // Trace row for the generation best.
        SolverTraceRow row;
        row.generation = k2;
        row.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.best_fitness = global.fitness;
        row.v_y = global.v_y;
        if (!global.formation.empty()) {
            Formation f = Formation::from_vector(global.formation);
            auto g = formation_violations(f, global.v_y, scenario);
            row.g2 = g.g2;
            row.g5 = g.g5;
            row.g6 = g.g6;
            row.g7 = g.g7;
            row.g8 = g.g8;
            row.g10 = global.plan.g10;
            row.g11 = global.plan.g11;
            row.feasible = g.sum() == 0.0 && global.plan.feasible;
            row.sigma_h = row.feasible ? global.fitness
                                       : fused_from_pairs(evaluate_pairs(f, global.v_y, scenario));
        }
        solution.trace.push_back(row);
    }

    solution.plan.formation = Formation::from_vector(global.formation);
    solution.plan.v_y = global.v_y;
    solution.plan.plan = global.plan;
    solution.fitness = global.fitness;
    try {
        solution.report = evaluate_plan(solution.plan, scenario);
        solution.feasible = solution.report.feasible;
    } catch (const std::domain_error&) {
        solution.report = ConstraintReport{};
        solution.report.sigma_h = std::numeric_limits<double>::infinity();
        solution.feasible = false;
    }
    return solution;
}

}  // namespace swarmplan
