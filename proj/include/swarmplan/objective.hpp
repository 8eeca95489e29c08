#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmplan/comms_energy.hpp"
#include "swarmplan/model.hpp"
#include "swarmplan/scenario.hpp"

namespace swarmplan {

// One full candidate solution of the planning problem.
struct SwarmPlan {
    Formation formation;
    double v_y = 0.0;
    PowerPlan plan;
};

// Violation magnitudes of the penalised constraints plus the evaluated
// sensing quantities. feasible means every constraint holds.
struct ConstraintReport {
    double g2 = 0.0, g5 = 0.0, g6 = 0.0, g7 = 0.0, g8 = 0.0;
    double g10 = 0.0, g11 = 0.0;
    bool feasible = false;
    double sigma_h = 0.0;
    double coverage = 0.0;
    std::vector<PairMetrics> per_pair;
    std::vector<double> energies;  // per UAV (J)

    double violation_sum() const { return g2 + g5 + g6 + g7 + g8 + g10 + g11; }
};

struct FormationViolations {
    double g2 = 0.0, g5 = 0.0, g6 = 0.0, g7 = 0.0, g8 = 0.0;
    double sum() const { return g2 + g5 + g6 + g7 + g8; }
};

struct PowerViolations {
    double g10 = 0.0, g11 = 0.0;
};

struct SearchBounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

// Fitness of one candidate plus the bookkeeping the solvers track.
struct Evaluation {
    double fitness = 0.0;
    bool feasible = false;
    double sigma_h = 0.0;    // fused height error when evaluable
    double violation = 0.0;  // sum of active penalty terms
};

// Search box for the formation sub-problem, interleaved (x1,z1,...,xI,zI).
SearchBounds formation_bounds(const ScenarioParams& p);

// Penalties of the formation-side constraints. When `plan` is null the
// rates are taken at the closed-form minimal powers, making g8 zero by
// construction; a user-supplied plan is checked slot by slot.
FormationViolations formation_violations(const Formation& f, double v_y,
                                         const ScenarioParams& p,
                                         const PowerPlan* plan = nullptr);

PowerViolations power_violations(const LinkState& link, double v_y, const ScenarioParams& p);

// Non-parameterized penalty fitness of a flattened formation candidate
// for fixed v_y. sigma_h_max is the worst feasible objective seen so far.
Evaluation fitness_formation(std::span<const double> candidate, double v_y,
                             double sigma_h_max, const ScenarioParams& p);

// Outer fitness: passes through the inner best when C10 and C11 hold.
Evaluation fitness_outer(const PowerPlan& plan, double inner_best_fitness, double sigma_h_max);

// Combined fitness over (formation, v_y) used by the flat baselines.
Evaluation fitness_combined(std::span<const double> candidate, double sigma_h_max,
                            const ScenarioParams& p);

// Full re-evaluation of a solution from raw values; used for reports and
// the independent feasibility re-check.
ConstraintReport evaluate_plan(const SwarmPlan& plan, const ScenarioParams& p);

}  // namespace swarmplan
