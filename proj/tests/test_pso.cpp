#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <span>

#include "swarmplan/pso.hpp"
#include "swarmplan/rng.hpp"

using namespace swarmplan;

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

PsoConfig sphere_config(std::uint64_t seed) {
    PsoConfig cfg;
    cfg.dimension = 5;
    cfg.population = 100;
    cfg.iterations = 200;
    cfg.lower.assign(5, -5.0);
    cfg.upper.assign(5, 5.0);
    cfg.v_pso_max = 1.0;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("seed derivation separates streams") {
    CHECK(derive_seed(1, {0}) != derive_seed(1, {1}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {0}) == derive_seed(1, {0}));
    CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
}

TEST_CASE("uniform draws stay in range and gaussians have sane moments") {
    Rng rng(123);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform(2.0, 6.0);
        CHECK(u >= 2.0);
        CHECK(u < 6.0);
        double g = rng.gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}

TEST_CASE("inertia decays linearly from w_start to w_end") {
    auto cfg = sphere_config(1);
    cfg.iterations = 11;
    Pso pso(cfg, Pso::wrap(sphere));
    CHECK(pso.inertia() == doctest::Approx(0.9).epsilon(1e-12));
    for (int k = 0; k < 5; ++k) pso.step(Pso::wrap(sphere));
    CHECK(pso.inertia() == doctest::Approx(0.65).epsilon(1e-12));
    for (int k = 0; k < 5; ++k) pso.step(Pso::wrap(sphere));
    CHECK(pso.inertia() == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("sphere minimisation reaches the optimum") {
    std::vector<double> finals;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto res = Pso::run(sphere_config(seed), Pso::wrap(sphere));
        finals.push_back(res.best.fitness);
    }
    std::sort(finals.begin(), finals.end());
    double median = 0.5 * (finals[9] + finals[10]);
    CHECK(median <= 1e-3);
}

TEST_CASE("best-so-far fitness is monotone non-increasing") {
    auto res = Pso::run(sphere_config(5), Pso::wrap(sphere));
    for (std::size_t k = 1; k < res.trace.size(); ++k) {
        CHECK(res.trace[k].best_fitness <= res.trace[k - 1].best_fitness);
    }
}

TEST_CASE("particles never leave the search box") {
    auto cfg = sphere_config(9);
    cfg.iterations = 50;
    Pso pso(cfg, Pso::wrap(sphere));
    for (int k = 1; k < cfg.iterations; ++k) {
        pso.step(Pso::wrap(sphere));
        for (const auto& pos : pso.positions()) {
            for (int d = 0; d < cfg.dimension; ++d) {
                CHECK(pos[d] >= cfg.lower[d]);
                CHECK(pos[d] <= cfg.upper[d]);
            }
        }
    }
}

TEST_CASE("runs are bitwise repeatable for a fixed seed") {
    auto a = Pso::run(sphere_config(77), Pso::wrap(sphere));
    auto b = Pso::run(sphere_config(77), Pso::wrap(sphere));
    CHECK(a.best.fitness == b.best.fitness);
    REQUIRE(a.best_position.size() == b.best_position.size());
    for (std::size_t d = 0; d < a.best_position.size(); ++d) {
        CHECK(a.best_position[d] == b.best_position[d]);
    }
    auto c = Pso::run(sphere_config(78), Pso::wrap(sphere));
    CHECK(a.best.fitness != c.best.fitness);
}

TEST_CASE("seeded positions enter the initial population") {
    auto cfg = sphere_config(3);
    cfg.iterations = 1;
    cfg.seeded_positions = {{0.0, 0.0, 0.0, 0.0, 0.0}};
    Pso pso(cfg, Pso::wrap(sphere));
    CHECK(pso.best().fitness == doctest::Approx(0.0).epsilon(1e-12));
    bool found = false;
    for (const auto& pos : pso.positions()) {
        if (std::all_of(pos.begin(), pos.end(), [](double v) { return v == 0.0; })) found = true;
    }
    CHECK(found);
}

TEST_CASE("seeded positions outside the box are clamped") {
    auto cfg = sphere_config(3);
    cfg.iterations = 1;
    cfg.seeded_positions = {{9.0, -9.0, 0.0, 0.0, 0.0}};
    Pso pso(cfg, Pso::wrap(sphere));
    const auto& pos = pso.positions()[0];
    CHECK(pos[0] == 5.0);
    CHECK(pos[1] == -5.0);
}

TEST_CASE("the worst feasible objective only grows") {
    // Fitness marks every candidate feasible with sigma_h equal to the
    // sphere value, so sigma_h_max must track the running maximum.
    BatchFitness fitness = [](const std::vector<std::vector<double>>& pop, double) {
        std::vector<Evaluation> out(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) {
            out[i].fitness = sphere(pop[i]);
            out[i].sigma_h = out[i].fitness;
            out[i].feasible = true;
        }
        return out;
    };
    auto cfg = sphere_config(4);
    cfg.iterations = 30;
    cfg.sigma_h_cap = 0.0;
    Pso pso(cfg, fitness);
    double prev = pso.sigma_h_max();
    for (int k = 1; k < cfg.iterations; ++k) {
        pso.step(fitness);
        CHECK(pso.sigma_h_max() >= prev);
        prev = pso.sigma_h_max();
    }
}
