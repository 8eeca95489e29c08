#include "swarmplan/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "swarmplan/rng.hpp"

namespace swarmplan {

namespace {

struct FlatBounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

FlatBounds flat_bounds(const ScenarioParams& p) {
    auto fb = formation_bounds(p);
    FlatBounds b{std::move(fb.lower), std::move(fb.upper)};
    b.lower.push_back(p.v_min);
    b.upper.push_back(p.v_max);
    return b;
}

SolverTraceRow make_trace_row(int generation, double wall_time_s,
                              const std::vector<double>& best, const Evaluation& eval,
                              const ScenarioParams& p) {
    SolverTraceRow row;
    row.generation = generation;
    row.wall_time_s = wall_time_s;
    row.best_fitness = eval.fitness;
    row.feasible = eval.feasible;
    row.sigma_h = eval.sigma_h;
    row.v_y = best.back();
    Formation f = Formation::from_vector(std::span(best).subspan(0, best.size() - 1));
    try {
        auto g = formation_violations(f, row.v_y, p);
        auto plan = allocate_power(f, row.v_y, p);
        row.g2 = g.g2;
        row.g5 = g.g5;
        row.g6 = g.g6;
        row.g7 = g.g7;
        row.g8 = g.g8;
        row.g10 = plan.g10;
        row.g11 = plan.g11;
    } catch (const std::domain_error&) {
        // unevaluable best only happens before any valid candidate is seen
    }
    return row;
}

Solution finalize(const std::vector<double>& best, const Evaluation& eval,
                  std::vector<SolverTraceRow> trace, const ScenarioParams& p) {
    Solution s;
    s.plan.formation = Formation::from_vector(std::span(best).subspan(0, best.size() - 1));
    s.plan.v_y = best.back();
    s.plan.plan = allocate_power(s.plan.formation, s.plan.v_y, p);
    s.fitness = eval.fitness;
    s.report = evaluate_plan(s.plan, p);
    s.feasible = s.report.feasible;
    s.trace = std::move(trace);
    return s;
}

}  // namespace

void CgaConfig::validate() const {
    if (population < 2) throw std::invalid_argument("cga: population must be at least 2");
    if (generations < 1) throw std::invalid_argument("cga: generations must be positive");
    if (selection_rate <= 0.0 || selection_rate > 1.0)
        throw std::invalid_argument("cga: selection_rate must be in (0, 1]");
    if (mutation_rate < 0.0 || mutation_rate > 1.0)
        throw std::invalid_argument("cga: mutation_rate must be in [0, 1]");
}

void SaConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("sa: iterations must be positive");
    if (t0 <= 0.0) throw std::invalid_argument("sa: t0 must be positive");
    if (step_scale <= 0.0) throw std::invalid_argument("sa: step_scale must be positive");
}

Solution cga_solve(const ScenarioParams& scenario, const CgaConfig& config) {
    scenario.validate();
    config.validate();

    const auto bounds = flat_bounds(scenario);
    const int dim = static_cast<int>(bounds.lower.size());
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(derive_seed(config.seed, {3}));

    std::vector<std::vector<double>> population(static_cast<std::size_t>(config.population),
                                                std::vector<double>(dim));
    for (auto& individual : population)
        for (int k = 0; k < dim; ++k)
            individual[static_cast<std::size_t>(k)] = rng.uniform(bounds.lower[k], bounds.upper[k]);

    double sigma_h_max = config.sigma_h_cap;
    std::vector<Evaluation> evals(population.size());
    auto evaluate_all = [&] {
        for (std::size_t i = 0; i < population.size(); ++i)
            evals[i] = fitness_combined(population[i], sigma_h_max, scenario);
        for (const auto& e : evals)
            if (e.feasible && std::isfinite(e.sigma_h)) sigma_h_max = std::max(sigma_h_max, e.sigma_h);
    };
    evaluate_all();

    std::vector<double> best;
    Evaluation best_eval{std::numeric_limits<double>::infinity(), false, 0.0, 0.0};
    auto track_best = [&] {
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (evals[i].fitness < best_eval.fitness) {
                best_eval = evals[i];
                best = population[i];
            }
        }
    };
    track_best();

    std::vector<SolverTraceRow> trace;
    const int survivors =
        std::max(2, static_cast<int>(std::ceil(config.selection_rate * config.population)));

    for (int gen = 1; gen <= config.generations; ++gen) {
        // Truncation selection.
        std::vector<std::size_t> order(population.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return evals[a].fitness < evals[b].fitness;
        });

        std::vector<std::vector<double>> parents;
        parents.reserve(static_cast<std::size_t>(survivors));
        for (int i = 0; i < survivors; ++i) parents.push_back(population[order[static_cast<std::size_t>(i)]]);

        std::vector<std::vector<double>> next;
        next.reserve(population.size());
        next.push_back(parents.front());  // elite
        while (next.size() < population.size()) {
            const auto& a = parents[static_cast<std::size_t>(rng.uniform() * survivors)];
            const auto& b = parents[static_cast<std::size_t>(rng.uniform() * survivors)];
            std::vector<double> child(static_cast<std::size_t>(dim));
            for (int k = 0; k < dim; ++k) {
                double lo = std::min(a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)]);
                double hi = std::max(a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)]);
                double spread = config.blend_alpha * (hi - lo);
                double gene = rng.uniform(lo - spread, hi + spread);
                if (rng.uniform() < config.mutation_rate)
                    gene += rng.gaussian() * config.mutation_scale * (bounds.upper[k] - bounds.lower[k]);
                child[static_cast<std::size_t>(k)] = std::clamp(gene, bounds.lower[k], bounds.upper[k]);
            }
            next.push_back(std::move(child));
        }
        population = std::move(next);
        evaluate_all();
        track_best();

        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        trace.push_back(make_trace_row(gen, wall, best, best_eval, scenario));
    }

    return finalize(best, best_eval, std::move(trace), scenario);
}

Solution sa_solve(const ScenarioParams& scenario, const SaConfig& config) {
    scenario.validate();
    config.validate();

    const auto bounds = flat_bounds(scenario);
    const int dim = static_cast<int>(bounds.lower.size());
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(derive_seed(config.seed, {4}));

    std::vector<double> current(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k)
        current[static_cast<std::size_t>(k)] = rng.uniform(bounds.lower[k], bounds.upper[k]);

    double sigma_h_max = config.sigma_h_cap;
    auto evaluate = [&](const std::vector<double>& x) {
        auto e = fitness_combined(x, sigma_h_max, scenario);
        if (e.feasible && std::isfinite(e.sigma_h)) sigma_h_max = std::max(sigma_h_max, e.sigma_h);
        return e;
    };

    Evaluation current_eval = evaluate(current);
    std::vector<double> best = current;
    Evaluation best_eval = current_eval;
    std::vector<SolverTraceRow> trace;

    auto reflect = [](double x, double lo, double hi) {
        // Mirror across the violated boundary; clamp pathological overshoots.
        if (x < lo) x = lo + (lo - x);
        if (x > hi) x = hi - (x - hi);
        return std::clamp(x, lo, hi);
    };

    for (int k = 1; k <= config.iterations; ++k) {
        std::vector<double> proposal(static_cast<std::size_t>(dim));
        for (int d = 0; d < dim; ++d) {
            double step = rng.gaussian() * config.step_scale * (bounds.upper[d] - bounds.lower[d]);
            proposal[static_cast<std::size_t>(d)] =
                reflect(current[static_cast<std::size_t>(d)] + step, bounds.lower[d], bounds.upper[d]);
        }
        Evaluation prop_eval = evaluate(proposal);

        double temperature = config.t0 / (k + 1.0);
        double delta = prop_eval.fitness - current_eval.fitness;
        if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
            current = std::move(proposal);
            current_eval = prop_eval;
        }
        if (current_eval.fitness < best_eval.fitness) {
            best = current;
            best_eval = current_eval;
        }

        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        trace.push_back(make_trace_row(k, wall, best, best_eval, scenario));
    }

    return finalize(best, best_eval, std::move(trace), scenario);
}

}  // namespace swarmplan
