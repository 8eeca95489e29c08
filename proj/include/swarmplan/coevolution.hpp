#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarmplan/objective.hpp"
#include "swarmplan/pso.hpp"
#include "swarmplan/scenario.hpp"

namespace swarmplan {

struct CoevolutionConfig {
    int inner_population = 500;   // D1
    int inner_iterations = 500;   // K1
    int outer_population = 128;   // D2
    int outer_iterations = 100;   // K2
    double c1 = 2.5;
    double c2 = 2.0;
    double w_start = 0.9;
    double w_end = 0.4;
    double v_pso_max = 1.0;
    double sigma_h_cap = 10.0;
    int worker_count = 1;
    std::uint64_t seed = 0;
    bool warm_start = false;  // reuse each island's previous best as one seed particle

    void validate() const;
};

// One row of the per-generation convergence trace shared by all solvers.
struct SolverTraceRow {
    int generation = 0;
    double wall_time_s = 0.0;
    double best_fitness = 0.0;
    bool feasible = false;
    double g2 = 0.0, g5 = 0.0, g6 = 0.0, g7 = 0.0, g8 = 0.0, g10 = 0.0, g11 = 0.0;
    double sigma_h = 0.0;
    double v_y = 0.0;
};

struct Solution {
    SwarmPlan plan;
    ConstraintReport report;
    double fitness = 0.0;
    bool feasible = false;
    std::vector<SolverTraceRow> trace;
};

// Nested co-evolutionary solve: an outer swarm over the swarm velocity,
// each particle backed by an inner formation PSO run per generation, with
// the closed-form power allocation filling the remaining components.
Solution coevolution_solve(const ScenarioParams& scenario, const CoevolutionConfig& config);

}  // namespace swarmplan
