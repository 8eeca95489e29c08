#include "swarmplan/comms_energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarmplan {

std::vector<double> gs_distances(const Formation& f, double v_y, const ScenarioParams& p) {
    std::vector<double> d(static_cast<std::size_t>(f.size()) * p.slot_count);
    for (int i = 0; i < f.size(); ++i) {
        double dx = f.q[i].x - p.gs[0];
        double dz = f.q[i].z - p.gs[2];
        double planar2 = dx * dx + dz * dz;
        for (int n = 0; n < p.slot_count; ++n) {
            double dy = n * v_y * p.slot_duration - p.gs[1];
            double dist = std::sqrt(planar2 + dy * dy);
            if (dist <= 0.0) throw std::domain_error("gs_distances: UAV coincides with the GS");
            d[static_cast<std::size_t>(i) * p.slot_count + n] = dist;
        }
    }
    return d;
}

double required_rate(Position q, const ScenarioParams& p) {
    double theta = look_angle_and_range(q, p.target_x).theta;
    double half_beam = p.beamwidth / 2.0;
    if (theta + half_beam >= std::numbers::pi / 2.0)
        throw std::domain_error("required_rate: beam lower edge at or beyond the horizon");
    double geometric = p.speed_of_light * p.pulse_duration +
                       q.z / std::cos(theta + half_beam) - q.z / std::cos(theta - half_beam);
    return p.bits_per_sample * p.pulse_bandwidth * p.prf / p.speed_of_light * geometric;
}

double min_tx_power(double distance, double rate, double bandwidth, double beta_c) {
    return distance * distance / beta_c * (std::exp2(rate / bandwidth) - 1.0);
}

double throughput(double power, double distance, double bandwidth, double beta_c) {
    return bandwidth * std::log2(1.0 + power * beta_c / (distance * distance));
}

double propulsion_power(double v_y, const PropulsionParams& p) {
    double v2 = v_y * v_y;
    double blade = p.p0 * (1.0 + 3.0 * v2 / (p.u_tip * p.u_tip));
    double v0_2 = p.v0 * p.v0;
    double induced = p.p_i * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2));
    double parasite = 0.5 * p.d0 * p.rho * p.s * p.a_e * v2 * v_y;
    return blade + induced + parasite;
}

LinkState link_state(const Formation& f, double v_y, const ScenarioParams& p) {
    LinkState link;
    link.uav_count = f.size();
    link.slot_count = p.slot_count;
    link.distances = gs_distances(f, v_y, p);
    link.required_rates.reserve(f.q.size());
    for (const auto& q : f.q) link.required_rates.push_back(required_rate(q, p));
    link.min_powers.resize(link.distances.size());
    for (int i = 0; i < f.size(); ++i) {
        for (int n = 0; n < p.slot_count; ++n) {
            std::size_t k = static_cast<std::size_t>(i) * p.slot_count + n;
            link.min_powers[k] = min_tx_power(link.distances[k], link.required_rates[i],
                                              p.b_c[i], p.beta_c[i]);
        }
    }
    return link;
}

PowerPlan allocate_power(const LinkState& link, double v_y, const ScenarioParams& p) {
    PowerPlan plan;
    plan.uav_count = link.uav_count;
    plan.slot_count = link.slot_count;

    double p_prop = propulsion_power(v_y, p.propulsion);
    bool c11_ok = true;
    for (int i = 0; i < link.uav_count; ++i) {
        double power_budget = p.e_max / p.slot_duration - p.slot_count * p_prop -
                              p.slot_count * p.p_rad[i];
        double eta_sum = 0.0;
        for (int n = 0; n < link.slot_count; ++n) {
            double eta = link.min_power(i, n);
            eta_sum += eta;
            if (eta > p.p_com_max) plan.g10 += eta - p.p_com_max;
            // Penalty uses the per-term hinge exactly as printed.
            if (eta > power_budget) plan.g11 += eta - power_budget;
        }
        // Feasibility uses the aggregate form of C11.
        if (eta_sum > power_budget) c11_ok = false;
    }

    plan.feasible = (plan.g10 == 0.0) && c11_ok;
    plan.p_com = link.min_powers;
    return plan;
}

PowerPlan allocate_power(const Formation& f, double v_y, const ScenarioParams& p) {
    return allocate_power(link_state(f, v_y, p), v_y, p);
}

std::vector<double> total_energy(const PowerPlan& plan, double v_y, const ScenarioParams& p) {
    double t = p.mission_time();
    double p_prop = propulsion_power(v_y, p.propulsion);
    std::vector<double> energy(static_cast<std::size_t>(plan.uav_count));
    for (int i = 0; i < plan.uav_count; ++i) {
        double offload = 0.0;
        for (int n = 0; n < plan.slot_count; ++n) offload += p.slot_duration * plan.power(i, n);
        energy[static_cast<std::size_t>(i)] = t * p_prop + t * p.p_rad[i] + offload;
    }
    return energy;
}

}  // namespace swarmplan
