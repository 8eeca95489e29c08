#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swarmplan/config_io.hpp"
#include "swarmplan/experiments.hpp"
#include "swarmplan/objective.hpp"

namespace {

using namespace swarmplan;

int load_with_overrides(const std::string& path, const std::vector<std::string>& overrides,
                        ScenarioFile& out) {
    try {
        out = load_scenario_file(path);
        for (const auto& kv : overrides) apply_override(out, kv);
    } catch (const ConfigParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mission planner for multi-UAV interferometric SAR swaths"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string solver = "coevolution";
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int jobs = 1;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--scenario", scenario_path, "Scenario file (INI)")->required();
        cmd->add_option("--seed", seed, "Base RNG seed");
        cmd->add_option("--set", overrides, "Override a scenario key, e.g. constraints.c_min=2e4");
        if (needs_out) cmd->add_option("--out", out_dir, "Output directory");
    };

    auto* run = app.add_subcommand("run", "Optimize one scenario and write trace.csv/solution.json");
    add_common(run, true);
    run->add_option("--solver", solver, "coevolution | cga | sa");
    int run_jobs = 1;
    run->add_option("--jobs", run_jobs, "Worker threads for the inner swarms");

    auto* sweep = app.add_subcommand("sweep", "Run a one-variable sweep grid");
    add_common(sweep, true);
    std::string sweep_variable;
    std::string sweep_values;
    std::string sweep_solvers = "coevolution";
    int sweep_repeats = 3;
    sweep->add_option("--variable", sweep_variable, "h_amb_min | c_min | n_b | i")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep->add_option("--solvers", sweep_solvers, "Comma-separated solver names");
    sweep->add_option("--repeats", sweep_repeats, "Seeds per cell");
    sweep->add_option("--jobs", jobs, "Parallel sweep cells");

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
    add_common(validate, false);

    auto* report = app.add_subcommand("report", "Echo the scenario in canonical form");
    add_common(report, false);

    CLI11_PARSE(app, argc, argv);

    ScenarioFile file;
    int rc = load_with_overrides(scenario_path, overrides, file);
    if (rc != kExitFeasible) return rc;

    if (validate->parsed()) {
        std::cout << "ok: " << file.params.uav_count << " UAVs, " << file.params.slot_count
                  << " slots, " << file.params.pair_count() << " phase pairs\n";
        return kExitFeasible;
    }
    if (report->parsed()) {
        std::cout << serialize_scenario(file);
        return kExitFeasible;
    }
    if (run->parsed()) {
        file.solver.coevolution.worker_count = std::max(1, run_jobs);
        int code = run_experiment(file, solver, seed, out_dir);
        if (code == kExitFeasible || code == kExitInfeasible) {
            std::cout << (code == kExitFeasible ? "feasible" : "infeasible")
                      << "; outputs in " << out_dir << "\n";
        } else if (code == kExitOutput) {
            std::cerr << "cannot write to " << out_dir << "\n";
        } else {
            std::cerr << "solver failed\n";
        }
        return code;
    }

    // sweep
    SweepSpec spec;
    spec.variable = sweep_variable;
    spec.solvers.clear();
    {
        std::stringstream ss(sweep_values);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) spec.values.push_back(std::stod(tok));
        }
        std::stringstream sv(sweep_solvers);
        while (std::getline(sv, tok, ',')) {
            if (!tok.empty()) spec.solvers.push_back(tok);
        }
    }
    if (spec.values.empty() || spec.solvers.empty() || sweep_repeats < 1) {
        std::cerr << "sweep needs at least one value, one solver, and one repeat\n";
        return kExitValidation;
    }
    for (int r = 0; r < sweep_repeats; ++r) spec.seeds.push_back(seed + static_cast<std::uint64_t>(r));
    int code = run_sweep(file, spec, out_dir, jobs);
    if (code == kExitFeasible) {
        std::cout << "sweep complete; summary in " << (std::filesystem::path(out_dir) / "summary.csv").string() << "\n";
    }
    return code;
}
