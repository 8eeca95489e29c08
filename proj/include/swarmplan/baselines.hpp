#pragma once

#include <cstdint>

#include "swarmplan/coevolution.hpp"
#include "swarmplan/scenario.hpp"

namespace swarmplan {

// Real-coded GA over the flattened (formation, v_y) vector with the
// closed-form power filling, sharing the coevolution objective path.
struct CgaConfig {
    int population = 500;
    int generations = 300;
    double selection_rate = 0.3;
    double mutation_rate = 0.1;
    double mutation_scale = 0.1;  // Gaussian sigma as a fraction of range
    double blend_alpha = 0.1;     // BLX-alpha
    double sigma_h_cap = 10.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Single-chain simulated annealing with the fast schedule T_k = T0/(k+1).
struct SaConfig {
    int iterations = 5000;
    double t0 = 10.0;
    double step_scale = 0.05;  // proposal sigma as a fraction of range
    double sigma_h_cap = 10.0;
    std::uint64_t seed = 0;

    void validate() const;
};

Solution cga_solve(const ScenarioParams& scenario, const CgaConfig& config);
Solution sa_solve(const ScenarioParams& scenario, const SaConfig& config);

}  // namespace swarmplan
