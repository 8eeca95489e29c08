#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "swarmplan/coevolution.hpp"
#include "swarmplan/objective.hpp"

using namespace swarmplan;

namespace {

ScenarioParams tiny_scenario() {
    auto p = ScenarioParams::defaults(2);
    p.slot_count = 20;
    p.c_min = 2000.0;
    return p;
}

CoevolutionConfig tiny_config(std::uint64_t seed, int workers = 1) {
    CoevolutionConfig c;
    c.inner_population = 30;
    c.inner_iterations = 25;
    c.outer_population = 8;
    c.outer_iterations = 6;
    c.worker_count = workers;
    c.seed = seed;
    return c;
}

bool traces_equal(const std::vector<SolverTraceRow>& a, const std::vector<SolverTraceRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        // wall_time_s is the one timing-dependent column.
        if (a[k].generation != b[k].generation) return false;
        if (a[k].best_fitness != b[k].best_fitness) return false;
        if (a[k].feasible != b[k].feasible) return false;
        if (a[k].g2 != b[k].g2 || a[k].g5 != b[k].g5 || a[k].g6 != b[k].g6) return false;
        if (a[k].g7 != b[k].g7 || a[k].g8 != b[k].g8) return false;
        if (a[k].g10 != b[k].g10 || a[k].g11 != b[k].g11) return false;
        if (a[k].sigma_h != b[k].sigma_h || a[k].v_y != b[k].v_y) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("the tiny scenario is solved to feasibility") {
    auto sol = coevolution_solve(tiny_scenario(), tiny_config(11));
    CHECK(sol.feasible);
    CHECK(sol.report.feasible);
    CHECK(sol.fitness == doctest::Approx(sol.report.sigma_h).epsilon(1e-9));
    CHECK(sol.trace.size() == 6);
}

TEST_CASE("best fitness never worsens across outer generations") {
    auto sol = coevolution_solve(tiny_scenario(), tiny_config(12));
    for (std::size_t k = 1; k < sol.trace.size(); ++k) {
        CHECK(sol.trace[k].best_fitness <= sol.trace[k - 1].best_fitness);
    }
}

TEST_CASE("the reported solution survives an independent re-check") {
    auto p = tiny_scenario();
    auto sol = coevolution_solve(p, tiny_config(13));
    auto report = evaluate_plan(sol.plan, p);
    CHECK(report.feasible == sol.feasible);
    CHECK(report.sigma_h == doctest::Approx(sol.report.sigma_h).epsilon(1e-12));
    CHECK(sol.plan.v_y >= p.v_min);
    CHECK(sol.plan.v_y <= p.v_max);
    for (const auto& q : sol.plan.formation.q) {
        CHECK(q.z >= p.z_min);
        CHECK(q.z <= p.z_max);
    }
}

TEST_CASE("results are identical for any worker count") {
    auto p = tiny_scenario();
    auto serial = coevolution_solve(p, tiny_config(21, 1));
    auto parallel = coevolution_solve(p, tiny_config(21, 4));
    CHECK(serial.fitness == parallel.fitness);
    CHECK(serial.plan.v_y == parallel.plan.v_y);
    auto fa = serial.plan.formation.to_vector();
    auto fb = parallel.plan.formation.to_vector();
    REQUIRE(fa.size() == fb.size());
    for (std::size_t d = 0; d < fa.size(); ++d) CHECK(fa[d] == fb[d]);
    CHECK(traces_equal(serial.trace, parallel.trace));
}

TEST_CASE("different seeds explore differently") {
    auto p = tiny_scenario();
    auto a = coevolution_solve(p, tiny_config(31));
    auto b = coevolution_solve(p, tiny_config(32));
    CHECK(a.plan.v_y != b.plan.v_y);
}

TEST_CASE("warm starting does not break determinism or feasibility") {
    auto p = tiny_scenario();
    auto cfg = tiny_config(41);
    cfg.warm_start = true;
    auto a = coevolution_solve(p, cfg);
    auto b = coevolution_solve(p, cfg);
    CHECK(a.fitness == b.fitness);
    CHECK(a.feasible);
}

TEST_CASE("config validation rejects degenerate sizes") {
    auto cfg = tiny_config(1);
    cfg.outer_population = 0;
    CHECK_THROWS(cfg.validate());
    cfg = tiny_config(1);
    cfg.inner_iterations = 0;
    CHECK_THROWS(cfg.validate());
    cfg = tiny_config(1);
    cfg.worker_count = 0;
    CHECK_THROWS(cfg.validate());
}
