#include "swarmplan/objective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmplan {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Fitness assigned to candidates that cannot be evaluated at all.
constexpr double kUnevaluablePenalty = 1e12;
// Rate hinges below this relative level are floating-point noise of the
// exact throughput/min-power inversion, not violations.
constexpr double kRateTolerance = 1e-9;

inline double hinge(double x) { return x > 0.0 ? x : 0.0; }
}  // namespace

SearchBounds formation_bounds(const ScenarioParams& p) {
    double x_min = p.target_x - p.z_max * std::tan(p.theta_max);
    double x_max = p.target_x - p.z_min * std::tan(p.theta_min);
    SearchBounds b;
    b.lower.reserve(2 * p.uav_count);
    b.upper.reserve(2 * p.uav_count);
    for (int i = 0; i < p.uav_count; ++i) {
        b.lower.push_back(x_min);
        b.lower.push_back(p.z_min);
        b.upper.push_back(x_max);
        b.upper.push_back(p.z_max);
    }
    return b;
}

FormationViolations formation_violations(const Formation& f, double v_y,
                                         const ScenarioParams& p, const PowerPlan* plan) {
    FormationViolations g;

    std::vector<double> thetas(f.q.size());
    for (std::size_t i = 0; i < f.q.size(); ++i) {
        thetas[i] = look_angle_and_range(f.q[i], p.target_x).theta;
        g.g2 += hinge(p.theta_min - thetas[i]) + hinge(thetas[i] - p.theta_max);
    }

    for (std::size_t i = 0; i < f.q.size(); ++i)
        for (std::size_t j = i + 1; j < f.q.size(); ++j)
            g.g5 += hinge(p.d_min - std::hypot(f.q[i].x - f.q[j].x, f.q[i].z - f.q[j].z));

    g.g6 = hinge(p.c_min - swath_and_coverage(f, v_y, p).total);

    for (auto [i, j] : p.unwrap_pairs()) {
        auto geo = baseline_geometry(f.q[static_cast<std::size_t>(i)],
                                     f.q[static_cast<std::size_t>(j)], p.target_x);
        auto look = look_angle_and_range(f.q[static_cast<std::size_t>(i)], p.target_x);
        double h = std::abs(hoa(look.theta, look.range, geo.b_perp, p.wavelength));
        if (std::isfinite(h)) g.g7 += hinge(p.h_amb_min - h);
        // b_perp == 0 means infinite HoA, which satisfies the minimum.
    }

    if (plan != nullptr) {
        auto d = gs_distances(f, v_y, p);
        for (int i = 0; i < f.size(); ++i) {
            double r_min = required_rate(f.q[static_cast<std::size_t>(i)], p);
            for (int n = 0; n < p.slot_count; ++n) {
                std::size_t k = static_cast<std::size_t>(i) * p.slot_count + n;
                double rate = throughput(plan->power(i, n), d[k], p.b_c[i], p.beta_c[i]);
                double shortfall = r_min - rate;
                if (shortfall > kRateTolerance * r_min) g.g8 += shortfall;
            }
        }
    }
    // With the closed-form minimal powers the rate meets R_min exactly,
    // so g8 stays zero whenever distances are finite.
    return g;
}

PowerViolations power_violations(const LinkState& link, double v_y, const ScenarioParams& p) {
    auto plan = allocate_power(link, v_y, p);
    return {plan.g10, plan.g11};
}

Evaluation fitness_formation(std::span<const double> candidate, double v_y,
                             double sigma_h_max, const ScenarioParams& p) {
    Evaluation e;
    try {
        Formation f = Formation::from_vector(candidate);
        auto g = formation_violations(f, v_y, p);
        double sigma = fused_from_pairs(evaluate_pairs(f, v_y, p));
        e.sigma_h = sigma;
        e.violation = g.sum();
        if (e.violation == 0.0) {
            e.feasible = true;
            e.fitness = sigma;
        } else {
            e.fitness = sigma_h_max + e.violation;
        }
    } catch (const std::domain_error&) {
        e.feasible = false;
        e.sigma_h = kInf;
        e.violation = kUnevaluablePenalty;
        e.fitness = sigma_h_max + kUnevaluablePenalty;
    }
    return e;
}

Evaluation fitness_outer(const PowerPlan& plan, double inner_best_fitness, double sigma_h_max) {
    Evaluation e;
    e.violation = plan.g10 + plan.g11;
    if (plan.feasible) {
        e.feasible = true;
        e.fitness = inner_best_fitness;
        e.sigma_h = inner_best_fitness;
    } else {
        e.fitness = sigma_h_max + e.violation;
        e.sigma_h = kInf;
    }
    return e;
}

Evaluation fitness_combined(std::span<const double> candidate, double sigma_h_max,
                            const ScenarioParams& p) {
    Evaluation e;
    if (candidate.size() != static_cast<std::size_t>(2 * p.uav_count + 1)) {
        throw std::invalid_argument("fitness_combined: candidate must have 2I+1 components");
    }
    double v_y = candidate.back();
    try {
        Formation f = Formation::from_vector(candidate.subspan(0, candidate.size() - 1));
        auto g = formation_violations(f, v_y, p);
        auto plan = allocate_power(f, v_y, p);
        double sigma = fused_from_pairs(evaluate_pairs(f, v_y, p));
        e.sigma_h = sigma;
        e.violation = g.sum() + plan.g10 + plan.g11;
        bool feasible = g.sum() == 0.0 && plan.feasible;
        if (feasible) {
            e.feasible = true;
            e.fitness = sigma;
        } else {
            e.fitness = sigma_h_max + e.violation;
        }
    } catch (const std::domain_error&) {
        e.sigma_h = kInf;
        e.violation = kUnevaluablePenalty;
        e.fitness = sigma_h_max + kUnevaluablePenalty;
    }
    return e;
}

ConstraintReport evaluate_plan(const SwarmPlan& plan, const ScenarioParams& p) {
    ConstraintReport r;
    bool has_schedule =
        plan.plan.p_com.size() ==
        static_cast<std::size_t>(plan.formation.size()) * static_cast<std::size_t>(p.slot_count);
    auto g = formation_violations(plan.formation, plan.v_y, p,
                                  has_schedule ? &plan.plan : nullptr);
    r.g2 = g.g2;
    r.g5 = g.g5;
    r.g6 = g.g6;
    r.g7 = g.g7;
    r.g8 = g.g8;

    auto link = link_state(plan.formation, plan.v_y, p);
    auto pv = power_violations(link, plan.v_y, p);
    r.g10 = pv.g10;
    r.g11 = pv.g11;

    r.per_pair = evaluate_pairs(plan.formation, plan.v_y, p);
    r.sigma_h = fused_from_pairs(r.per_pair);
    r.coverage = swath_and_coverage(plan.formation, plan.v_y, p).total;
    if (has_schedule) r.energies = total_energy(plan.plan, plan.v_y, p);

    bool bounds_ok = has_schedule && plan.v_y >= p.v_min && plan.v_y <= p.v_max;
    for (const auto& q : plan.formation.q)
        bounds_ok = bounds_ok && q.z >= p.z_min && q.z <= p.z_max;
    for (double pw : plan.plan.p_com)
        bounds_ok = bounds_ok && pw >= 0.0 && pw <= p.p_com_max;
    for (double en : r.energies) bounds_ok = bounds_ok && en <= p.e_max * (1.0 + 1e-12);

    r.feasible = bounds_ok && r.violation_sum() == 0.0;
    return r;
}

}  // namespace swarmplan
