#include "swarmplan/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "swarmplan/baselines.hpp"
#include "swarmplan/objective.hpp"
#include "swarmplan/rng.hpp"

namespace swarmplan {

namespace {

// Shortest round-trippable decimal form, always with '.' as the decimal
// separator regardless of locale.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s(buf);
    double back = std::strtod(s.c_str(), nullptr);
    for (int prec = 1; prec < 17; ++prec) {
        char trial[64];
        std::snprintf(trial, sizeof(trial), "%.*g", prec, v);
        if (std::strtod(trial, nullptr) == back) {
            s = trial;
            break;
        }
    }
    return s;
}

}  // namespace

Solution run_solver(const ScenarioFile& file, const std::string& solver, std::uint64_t seed) {
    if (solver == "coevolution") {
        CoevolutionConfig cfg = file.solver.coevolution;
        cfg.seed = seed;
        return coevolution_solve(file.params, cfg);
    }
    if (solver == "cga") {
        CgaConfig cfg = file.solver.cga;
        cfg.seed = seed;
        return cga_solve(file.params, cfg);
    }
    if (solver == "sa") {
        SaConfig cfg = file.solver.sa;
        cfg.seed = seed;
        return sa_solve(file.params, cfg);
    }
    throw std::invalid_argument("unknown solver: " + solver);
}

std::string trace_to_csv(const std::vector<SolverTraceRow>& trace) {
    std::string out =
        "generation,wall_time_s,best_fitness,feasible,g2,g5,g6,g7,g8,g10,g11,sigma_h,v_y\n";
    for (const auto& row : trace) {
        out += std::to_string(row.generation);
        out += ',';
        out += fmt(row.wall_time_s);
        out += ',';
        out += fmt(row.best_fitness);
        out += ',';
        out += row.feasible ? '1' : '0';
        for (double g : {row.g2, row.g5, row.g6, row.g7, row.g8, row.g10, row.g11}) {
            out += ',';
            out += fmt(g);
        }
        out += ',';
        out += fmt(row.sigma_h);
        out += ',';
        out += fmt(row.v_y);
        out += '\n';
    }
    return out;
}

std::string solution_to_json(const Solution& solution, const ScenarioFile& file,
                             const std::string& solver, std::uint64_t seed) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["solver"] = solver;
    doc["seed"] = seed;

    json formation = json::array();
    for (const auto& q : solution.plan.formation.q) {
        formation.push_back({{"x", q.x}, {"z", q.z}});
    }
    doc["formation"] = formation;
    doc["v_y"] = solution.plan.v_y;

    json pairs = json::array();
    for (const auto& pm : solution.report.per_pair) {
        json p;
        p["i"] = pm.i + 1;
        p["j"] = pm.j + 1;
        p["baseline"] = pm.baseline;
        p["b_perp"] = pm.b_perp;
        p["height_of_ambiguity"] = pm.hoa;
        p["gamma_snr"] = pm.gamma_snr;
        p["gamma_rg"] = pm.gamma_rg;
        p["gamma"] = pm.gamma;
        p["sigma_h_pair"] = pm.sigma_h_pair;
        pairs.push_back(p);
    }
    doc["pairs"] = pairs;

    doc["sigma_h"] = solution.report.sigma_h;
    doc["coverage"] = solution.report.coverage;
    doc["energies_j"] = solution.report.energies;

    // Communication transmit powers: min/max over all slots per UAV.
    json power = json::array();
    const auto& plan = solution.plan.plan;
    if (!plan.p_com.empty()) {
        std::size_t uavs = solution.plan.formation.size();
        std::size_t slots = plan.p_com.size() / std::max<std::size_t>(uavs, 1);
        for (std::size_t i = 0; i < uavs; ++i) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            for (std::size_t n = 0; n < slots; ++n) {
                double p = plan.p_com[i * slots + n];
                lo = std::min(lo, p);
                hi = std::max(hi, p);
            }
            power.push_back({{"min_w", lo}, {"max_w", hi}});
        }
    }
    doc["com_power_w"] = power;

    json cons;
    cons["g2"] = solution.report.g2;
    cons["g5"] = solution.report.g5;
    cons["g6"] = solution.report.g6;
    cons["g7"] = solution.report.g7;
    cons["g8"] = solution.report.g8;
    cons["g10"] = solution.report.g10;
    cons["g11"] = solution.report.g11;
    cons["feasible"] = solution.report.feasible;
    doc["constraints"] = cons;

    doc["fitness"] = solution.fitness;
    doc["scenario_echo"] = serialize_scenario(file);
    return doc.dump(2) + "\n";
}

int run_experiment(const ScenarioFile& file, const std::string& solver, std::uint64_t seed,
                   const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) return kExitOutput;

    Solution solution;
    try {
        solution = run_solver(file, solver, seed);
    } catch (const std::invalid_argument&) {
        return kExitValidation;
    } catch (const std::exception&) {
        return kExitInternal;
    }

    {
        std::ofstream trace(out_dir / "trace.csv", std::ios::binary);
        if (!trace) return kExitOutput;
        trace << trace_to_csv(solution.trace);
    }
    {
        std::ofstream report(out_dir / "solution.json", std::ios::binary);
        if (!report) return kExitOutput;
        report << solution_to_json(solution, file, solver, seed);
    }
    return solution.feasible ? kExitFeasible : kExitInfeasible;
}

namespace {

ScenarioFile apply_sweep_value(const ScenarioFile& base, const std::string& variable,
                               double value) {
    ScenarioFile out = base;
    if (variable == "h_amb_min") {
        out.params.h_amb_min = value;
    } else if (variable == "c_min") {
        out.params.c_min = value;
    } else if (variable == "n_b") {
        out.params.bits_per_sample = static_cast<int>(std::llround(value));
    } else if (variable == "i") {
        int uavs = static_cast<int>(std::llround(value));
        out.params.uav_count = uavs;
        out.params.phase_pairs.clear();
        out.params.resize_per_uav();
    } else {
        throw std::invalid_argument("unknown sweep variable: " + variable);
    }
    out.params.validate();
    return out;
}

std::string value_label(double v) {
    std::string s = fmt(v);
    for (char& c : s) {
        if (c == '.' || c == '+') c = '_';
        if (c == '-') c = 'm';
    }
    return s;
}

struct SweepCell {
    double value = 0.0;
    std::string solver;
    std::uint64_t seed = 0;
    std::size_t repetition = 0;
    std::filesystem::path dir;
    int exit_code = kExitInternal;
    double sigma_h = std::numeric_limits<double>::quiet_NaN();
    bool feasible = false;
};

std::uint64_t cell_seed(const std::string& solver, double value, std::uint64_t base_seed,
                        std::size_t repetition) {
    std::uint64_t solver_tag = std::hash<std::string>{}(solver);
    std::uint64_t value_bits;
    static_assert(sizeof(value_bits) == sizeof(value));
    std::memcpy(&value_bits, &value, sizeof(value));
    return derive_seed(base_seed, {solver_tag, value_bits, repetition});
}

}  // namespace

int run_sweep(const ScenarioFile& file, const SweepSpec& sweep,
              const std::filesystem::path& out_dir, int jobs) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) return kExitOutput;

    std::vector<SweepCell> cells;
    for (double value : sweep.values) {
        for (const auto& solver : sweep.solvers) {
            for (std::size_t rep = 0; rep < sweep.seeds.size(); ++rep) {
                SweepCell cell;
                cell.value = value;
                cell.solver = solver;
                cell.repetition = rep;
                cell.seed = cell_seed(solver, value, sweep.seeds[rep], rep);
                cell.dir = out_dir / (sweep.variable + "_" + value_label(value)) / solver /
                           ("seed_" + std::to_string(sweep.seeds[rep]));
                cells.push_back(std::move(cell));
            }
        }
    }

    auto run_cell = [&](SweepCell& cell) {
        try {
            ScenarioFile scenario = apply_sweep_value(file, sweep.variable, cell.value);
            cell.exit_code = run_experiment(scenario, cell.solver, cell.seed, cell.dir);
            if (cell.exit_code == kExitFeasible || cell.exit_code == kExitInfeasible) {
                std::ifstream in(cell.dir / "solution.json");
                nlohmann::json doc = nlohmann::json::parse(in);
                cell.sigma_h = doc.at("sigma_h").get<double>();
                cell.feasible = doc.at("constraints").at("feasible").get<bool>();
            }
        } catch (const std::exception&) {
            cell.exit_code = kExitInternal;
        }
    };

    int workers = std::max(1, jobs);
    if (workers <= 1 || cells.size() <= 1) {
        for (auto& cell : cells) run_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::size_t count = std::min<std::size_t>(workers, cells.size());
        for (std::size_t t = 0; t < count; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t idx = next.fetch_add(1);
                    if (idx >= cells.size()) return;
                    run_cell(cells[idx]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Aggregate per (value, solver): median/min/max of final fused sigma_h
    // over feasible repetitions.
    std::string summary =
        "variable,value,solver,runs,feasible_runs,sigma_h_median,sigma_h_min,sigma_h_max\n";
    for (double value : sweep.values) {
        for (const auto& solver : sweep.solvers) {
            std::vector<double> sigmas;
            int runs = 0;
            for (const auto& cell : cells) {
                if (cell.value != value || cell.solver != solver) continue;
                ++runs;
                if (cell.feasible && std::isfinite(cell.sigma_h)) sigmas.push_back(cell.sigma_h);
            }
            summary += sweep.variable + "," + fmt(value) + "," + solver + "," +
                       std::to_string(runs) + "," + std::to_string(sigmas.size());
            if (sigmas.empty()) {
                summary += ",nan,nan,nan\n";
            } else {
                std::sort(sigmas.begin(), sigmas.end());
                std::size_t n = sigmas.size();
                double median = (n % 2 == 1) ? sigmas[n / 2]
                                             : 0.5 * (sigmas[n / 2 - 1] + sigmas[n / 2]);
                summary += "," + fmt(median) + "," + fmt(sigmas.front()) + "," +
                           fmt(sigmas.back()) + "\n";
            }
        }
    }
    std::ofstream out(out_dir / "summary.csv", std::ios::binary);
    if (!out) return kExitOutput;
    out << summary;

    bool any_internal = std::any_of(cells.begin(), cells.end(), [](const SweepCell& c) {
        return c.exit_code != kExitFeasible && c.exit_code != kExitInfeasible;
    });
    return any_internal ? kExitInternal : kExitFeasible;
}

}  // namespace swarmplan
