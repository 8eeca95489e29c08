#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swarmplan/objective.hpp"
#include "swarmplan/rng.hpp"

namespace swarmplan {

struct PsoConfig {
    int dimension = 0;
    int population = 0;
    int iterations = 0;
    double c1 = 2.5;
    double c2 = 2.0;
    double w_start = 0.9;
    double w_end = 0.4;
    double v_pso_max = 1.0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::uint64_t seed = 0;
    double sigma_h_cap = 10.0;  // penalty baseline until a feasible point is seen
    // Optional warm-start particles; they replace the first entries of the
    // random initial population (clamped into the box).
    std::vector<std::vector<double>> seeded_positions;

    void validate() const;  // throws std::invalid_argument
};

struct PsoTraceRow {
    int generation = 0;
    double best_fitness = 0.0;
    bool feasible = false;
    double violation = 0.0;
    double sigma_h = 0.0;
};

// Evaluates a whole population; the sigma_h_max snapshot is fixed for the
// duration of one generation.
using BatchFitness = std::function<std::vector<Evaluation>(
    const std::vector<std::vector<double>>& positions, double sigma_h_max)>;

struct PsoResult {
    std::vector<double> best_position;
    Evaluation best;
    std::vector<PsoTraceRow> trace;
    double sigma_h_max = 0.0;  // worst feasible objective observed
};

// Non-parameterized PSO with linearly decaying inertia and a reflecting
// wall at the search box.
class Pso {
public:
    Pso(PsoConfig config, const BatchFitness& fitness);

    // One velocity/position update plus evaluation; generation counts from 1
    // (the initial population is generation 1).
    void step(const BatchFitness& fitness);

    int generation() const { return generation_; }
    const std::vector<double>& best_position() const { return best_position_; }
    const Evaluation& best() const { return best_; }
    double sigma_h_max() const { return sigma_h_max_; }
    double inertia() const;
    const std::vector<std::vector<double>>& positions() const { return positions_; }
    const std::vector<PsoTraceRow>& trace() const { return trace_; }

    static PsoResult run(const PsoConfig& config, const BatchFitness& fitness);

    // Convenience wrapper for plain scalar objectives.
    static BatchFitness wrap(const std::function<double(std::span<const double>)>& fn);

private:
    void evaluate(const BatchFitness& fitness);
    void record_trace();

    PsoConfig config_;
    std::vector<std::vector<double>> positions_;
    std::vector<std::vector<double>> velocities_;
    std::vector<std::vector<double>> local_best_;
    std::vector<Evaluation> local_best_eval_;
    std::vector<double> best_position_;
    Evaluation best_;
    std::vector<Rng> streams_;  // one per particle
    double sigma_h_max_;
    int generation_ = 1;
    std::vector<PsoTraceRow> trace_;
};

}  // namespace swarmplan
