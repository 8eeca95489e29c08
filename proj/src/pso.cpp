#include "swarmplan/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmplan {

void PsoConfig::validate() const {
    if (dimension < 1) throw std::invalid_argument("pso: dimension must be positive");
    if (population < 1) throw std::invalid_argument("pso: population must be positive");
    if (iterations < 1) throw std::invalid_argument("pso: iterations must be positive");
    if (!(0.0 <= w_end && w_end <= w_start && w_start <= 1.0))
        throw std::invalid_argument("pso: inertia endpoints must satisfy 0 <= w_end <= w_start <= 1");
    if (lower.size() != static_cast<std::size_t>(dimension) ||
        upper.size() != static_cast<std::size_t>(dimension))
        throw std::invalid_argument("pso: bounds must match dimension");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] > upper[i]) throw std::invalid_argument("pso: lower bound above upper bound");
}

Pso::Pso(PsoConfig config, const BatchFitness& fitness)
    : config_(std::move(config)), sigma_h_max_(config_.sigma_h_cap) {
    config_.validate();
    const int d = config_.dimension;
    positions_.resize(config_.population, std::vector<double>(d));
    velocities_.resize(config_.population, std::vector<double>(d));

    streams_.reserve(config_.population);
    for (int p = 0; p < config_.population; ++p)
        streams_.emplace_back(derive_seed(config_.seed, {static_cast<std::uint64_t>(p)}));

    for (int p = 0; p < config_.population; ++p) {
        for (int k = 0; k < d; ++k)
            positions_[p][k] = streams_[p].uniform(config_.lower[k], config_.upper[k]);
        for (int k = 0; k < d; ++k)
            velocities_[p][k] = streams_[p].uniform(0.0, config_.v_pso_max);
    }

    for (std::size_t s = 0; s < config_.seeded_positions.size() &&
                            s < static_cast<std::size_t>(config_.population); ++s) {
        const auto& seeded = config_.seeded_positions[s];
        if (seeded.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("pso: seeded position has wrong dimension");
        for (int k = 0; k < d; ++k)
            positions_[s][k] = std::clamp(seeded[static_cast<std::size_t>(k)],
                                          config_.lower[k], config_.upper[k]);
    }

    best_.fitness = std::numeric_limits<double>::infinity();
    local_best_ = positions_;
    local_best_eval_.assign(positions_.size(), Evaluation{
        std::numeric_limits<double>::infinity(), false, 0.0, 0.0});
    evaluate(fitness);
    record_trace();
}

double Pso::inertia() const {
    if (config_.iterations == 1) return config_.w_start;
    double t = static_cast<double>(generation_ - 1) / (config_.iterations - 1);
    return config_.w_start + (config_.w_end - config_.w_start) * std::min(t, 1.0);
}

void Pso::step(const BatchFitness& fitness) {
    const double w = inertia();
    for (int p = 0; p < config_.population; ++p) {
        double r1 = streams_[p].uniform();
        double r2 = streams_[p].uniform();
        auto& pos = positions_[p];
        auto& vel = velocities_[p];
        for (int k = 0; k < config_.dimension; ++k) {
            vel[k] = w * vel[k] + config_.c1 * r1 * (local_best_[p][k] - pos[k]) +
                     config_.c2 * r2 * (best_position_[k] - pos[k]);
            if (pos[k] + vel[k] < config_.lower[k] || pos[k] + vel[k] > config_.upper[k])
                vel[k] = -vel[k];
            pos[k] += vel[k];
            // A reflected move can still exit when |v| exceeds the box size.
            if (pos[k] < config_.lower[k]) {
                pos[k] = config_.lower[k];
                vel[k] = 0.0;
            } else if (pos[k] > config_.upper[k]) {
                pos[k] = config_.upper[k];
                vel[k] = 0.0;
            }
        }
    }
    ++generation_;
    evaluate(fitness);
    record_trace();
}

void Pso::evaluate(const BatchFitness& fitness) {
    auto evals = fitness(positions_, sigma_h_max_);
    if (evals.size() != positions_.size())
        throw std::logic_error("pso: fitness returned wrong batch size");
    for (std::size_t p = 0; p < evals.size(); ++p) {
        if (evals[p].fitness < local_best_eval_[p].fitness) {
            local_best_eval_[p] = evals[p];
            local_best_[p] = positions_[p];
        }
        if (evals[p].fitness < best_.fitness) {
            best_ = evals[p];
            best_position_ = positions_[p];
        }
        if (evals[p].feasible && std::isfinite(evals[p].sigma_h))
            sigma_h_max_ = std::max(sigma_h_max_, evals[p].sigma_h);
    }
}

void Pso::record_trace() {
    trace_.push_back({generation_, best_.fitness, best_.feasible, best_.violation, best_.sigma_h});
}

PsoResult Pso::run(const PsoConfig& config, const BatchFitness& fitness) {
    Pso pso(config, fitness);
    for (int k = 0; k < config.iterations; ++k) pso.step(fitness);
    return {pso.best_position(), pso.best(), pso.trace(), pso.sigma_h_max()};
}

BatchFitness Pso::wrap(const std::function<double(std::span<const double>)>& fn) {
    return [fn](const std::vector<std::vector<double>>& positions, double) {
        std::vector<Evaluation> out;
        out.reserve(positions.size());
        for (const auto& pos : positions) {
            double f = fn(pos);
            out.push_back({f, true, f, 0.0});
        }
        return out;
    };
}

}  // namespace swarmplan
