#pragma once

#include <vector>

#include "swarmplan/model.hpp"
#include "swarmplan/scenario.hpp"

namespace swarmplan {

// UAV-to-GS link geometry and the per-slot minimum transmit powers of the
// closed-form allocation. Matrices are row-major, indexed [i * N + n].
struct LinkState {
    std::vector<double> distances;       // m, I x N
    std::vector<double> required_rates;  // bit/s, per UAV
    std::vector<double> min_powers;      // W (eta), I x N
    int uav_count = 0;
    int slot_count = 0;

    double distance(int i, int n) const { return distances[static_cast<std::size_t>(i) * slot_count + n]; }
    double min_power(int i, int n) const { return min_powers[static_cast<std::size_t>(i) * slot_count + n]; }
};

// Communication power schedule. Infeasibility is a value: the plan then
// carries the C10/C11 violation magnitudes instead of throwing.
struct PowerPlan {
    std::vector<double> p_com;  // W, I x N
    bool feasible = false;
    double g10 = 0.0;
    double g11 = 0.0;
    int uav_count = 0;
    int slot_count = 0;

    double power(int i, int n) const { return p_com[static_cast<std::size_t>(i) * slot_count + n]; }
};

std::vector<double> gs_distances(const Formation& f, double v_y, const ScenarioParams& p);
double required_rate(Position q, const ScenarioParams& p);
double min_tx_power(double distance, double rate, double bandwidth, double beta_c);
double throughput(double power, double distance, double bandwidth, double beta_c);
double propulsion_power(double v_y, const PropulsionParams& p);

LinkState link_state(const Formation& f, double v_y, const ScenarioParams& p);

// Closed-form minimal allocation: P_com = eta when C10 and C11 hold,
// otherwise an infeasible plan carrying the violation sums.
PowerPlan allocate_power(const LinkState& link, double v_y, const ScenarioParams& p);
PowerPlan allocate_power(const Formation& f, double v_y, const ScenarioParams& p);

// Per-UAV total energy over the mission for a given power schedule.
std::vector<double> total_energy(const PowerPlan& plan, double v_y, const ScenarioParams& p);

}  // namespace swarmplan
