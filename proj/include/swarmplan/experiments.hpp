#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "swarmplan/config_io.hpp"
#include "swarmplan/coevolution.hpp"

namespace swarmplan {

// CLI exit codes.
inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitParse = 64;
inline constexpr int kExitValidation = 65;
inline constexpr int kExitOutput = 66;

// Runs one solver and returns the solution without touching the disk.
Solution run_solver(const ScenarioFile& file, const std::string& solver, std::uint64_t seed);

// The per-generation convergence trace in CSV form. Deterministic except
// for the wall_time_s column.
std::string trace_to_csv(const std::vector<SolverTraceRow>& trace);

// Structured solution report (UTF-8 JSON, stable key order) with the
// scenario echoed in canonical form.
std::string solution_to_json(const Solution& solution, const ScenarioFile& file,
                             const std::string& solver, std::uint64_t seed);

// Writes trace.csv and solution.json into out_dir; returns an exit code.
int run_experiment(const ScenarioFile& file, const std::string& solver, std::uint64_t seed,
                   const std::filesystem::path& out_dir);

struct SweepSpec {
    std::string variable;  // h_amb_min | c_min | n_b | i
    std::vector<double> values;
    std::vector<std::string> solvers;
    std::vector<std::uint64_t> seeds;
};

// One sub-directory per (value, solver, seed) plus an aggregated
// summary.csv; cells run in parallel up to `jobs`.
int run_sweep(const ScenarioFile& file, const SweepSpec& sweep,
              const std::filesystem::path& out_dir, int jobs);

}  // namespace swarmplan
