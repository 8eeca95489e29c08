#include "swarmplan/config_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace swarmplan {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Table-entry propulsion constants, only used behind use_table_constants.
struct TablePropulsion {
    bool use_table_constants = false;
    double delta_u = 0.012;
    double omega = 300.0;
    double rotor_radius = 0.4;
    double k_u = 0.1;
    double w_u = 120.0;
};

// Per-UAV scalars staged until uav_count is known.
struct StagedScalars {
    double p_rad = db_to_linear(15.0);
    double b_c = 1e9;
    double beta_c = db_to_linear(20.0);
};

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigParseError("invalid number for " + key + ": '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    double x = parse_double(key, value);
    if (x != std::floor(x)) throw ConfigParseError("expected integer for " + key);
    return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigParseError("expected boolean for " + key + ": '" + value + "'");
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& key, const std::string& value) {
    if (value == "all" || value.empty()) return {};
    std::vector<std::pair<int, int>> pairs;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto dash = item.find('-');
        if (dash == std::string::npos) throw ConfigParseError("expected i-j pairs for " + key);
        int i = parse_int(key, item.substr(0, dash));
        int j = parse_int(key, item.substr(dash + 1));
        pairs.emplace_back(i - 1, j - 1);  // config is 1-based
    }
    return pairs;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

struct Loader {
    ScenarioFile& file;
    TablePropulsion table;
    StagedScalars scalars;

    void set(const std::string& full_key, const std::string& value) {
        ScenarioParams& p = file.params;
        PropulsionParams& prop = p.propulsion;
        CoevolutionConfig& co = file.solver.coevolution;
        CgaConfig& cga = file.solver.cga;
        SaConfig& sa = file.solver.sa;
        const std::string& k = full_key;
        auto d = [&] { return parse_double(k, value); };
        auto n = [&] { return parse_int(k, value); };

        if (k == "geometry.uav_count") p.uav_count = n();
        else if (k == "geometry.slot_count") p.slot_count = n();
        else if (k == "geometry.slot_duration") p.slot_duration = d();
        else if (k == "geometry.x_t") p.target_x = d();
        else if (k == "geometry.gs_x") p.gs[0] = d();
        else if (k == "geometry.gs_y") p.gs[1] = d();
        else if (k == "geometry.gs_z") p.gs[2] = d();
        else if (k == "radar.wavelength") p.wavelength = d();
        else if (k == "radar.center_frequency") p.center_frequency = d();
        else if (k == "radar.pulse_bandwidth") p.pulse_bandwidth = d();
        else if (k == "radar.beamwidth_deg") p.beamwidth = d() * kDegToRad;
        else if (k == "radar.beamwidth_rad") p.beamwidth = d();
        else if (k == "radar.sigma0_db") p.sigma0 = db_to_linear(d());
        else if (k == "radar.sigma0") p.sigma0 = d();
        else if (k == "radar.gain_tx_dbi") p.gain_tx = db_to_linear(d());
        else if (k == "radar.gain_tx") p.gain_tx = d();
        else if (k == "radar.gain_rx_dbi") p.gain_rx = db_to_linear(d());
        else if (k == "radar.gain_rx") p.gain_rx = d();
        else if (k == "radar.prf") p.prf = d();
        else if (k == "radar.pulse_duration") p.pulse_duration = d();
        else if (k == "radar.t_sys") p.t_sys = d();
        else if (k == "radar.noise_figure_db") p.noise_figure = db_to_linear(d());
        else if (k == "radar.noise_figure") p.noise_figure = d();
        else if (k == "radar.losses_db") p.losses = db_to_linear(d());
        else if (k == "radar.losses") p.losses = d();
        else if (k == "radar.gamma_other") p.gamma_other = d();
        else if (k == "radar.n_looks") p.looks = n();
        else if (k == "radar.n_bits") p.bits_per_sample = n();
        else if (k == "radar.p_rad_dbw") scalars.p_rad = db_to_linear(d());
        else if (k == "radar.p_rad_w") scalars.p_rad = d();
        else if (k == "comms.b_c") scalars.b_c = d();
        else if (k == "comms.beta_c_db") scalars.beta_c = db_to_linear(d());
        else if (k == "comms.beta_c") scalars.beta_c = d();
        else if (k == "comms.p_com_max_dbw") p.p_com_max = db_to_linear(d());
        else if (k == "comms.p_com_max_w") p.p_com_max = d();
        else if (k == "energy.e_max_wh") p.e_max = d() * 3600.0;
        else if (k == "energy.e_max_j") p.e_max = d();
        else if (k == "energy.p0") prop.p0 = d();
        else if (k == "energy.p_i") prop.p_i = d();
        else if (k == "energy.v0") prop.v0 = d();
        else if (k == "energy.u_tip") prop.u_tip = d();
        else if (k == "energy.d0") prop.d0 = d();
        else if (k == "energy.rho") prop.rho = d();
        else if (k == "energy.s") prop.s = d();
        else if (k == "energy.a_e") prop.a_e = d();
        else if (k == "energy.use_table_constants") table.use_table_constants = parse_bool(k, value);
        else if (k == "energy.delta_u") table.delta_u = d();
        else if (k == "energy.omega") table.omega = d();
        else if (k == "energy.rotor_radius") table.rotor_radius = d();
        else if (k == "energy.k_u") table.k_u = d();
        else if (k == "energy.w_u") table.w_u = d();
        else if (k == "constraints.z_min") p.z_min = d();
        else if (k == "constraints.z_max") p.z_max = d();
        else if (k == "constraints.theta_min_deg") p.theta_min = d() * kDegToRad;
        else if (k == "constraints.theta_min_rad") p.theta_min = d();
        else if (k == "constraints.theta_max_deg") p.theta_max = d() * kDegToRad;
        else if (k == "constraints.theta_max_rad") p.theta_max = d();
        else if (k == "constraints.v_min") p.v_min = d();
        else if (k == "constraints.v_max") p.v_max = d();
        else if (k == "constraints.d_min") p.d_min = d();
        else if (k == "constraints.c_min") p.c_min = d();
        else if (k == "constraints.h_amb_min") p.h_amb_min = d();
        else if (k == "constraints.phase_pairs") p.phase_pairs = parse_pairs(k, value);
        else if (k == "solver.d1") co.inner_population = n();
        else if (k == "solver.k1") co.inner_iterations = n();
        else if (k == "solver.d2") co.outer_population = n();
        else if (k == "solver.k2") co.outer_iterations = n();
        else if (k == "solver.c1") co.c1 = d();
        else if (k == "solver.c2") co.c2 = d();
        else if (k == "solver.w_start") co.w_start = d();
        else if (k == "solver.w_end") co.w_end = d();
        else if (k == "solver.v_pso_max") co.v_pso_max = d();
        else if (k == "solver.sigma_h_cap") {
            co.sigma_h_cap = d();
            cga.sigma_h_cap = co.sigma_h_cap;
            sa.sigma_h_cap = co.sigma_h_cap;
        }
        else if (k == "solver.warm_start") co.warm_start = parse_bool(k, value);
        else if (k == "solver.workers") co.worker_count = n();
        else if (k == "solver.cga_population") cga.population = n();
        else if (k == "solver.cga_generations") cga.generations = n();
        else if (k == "solver.cga_selection_rate") cga.selection_rate = d();
        else if (k == "solver.cga_mutation_rate") cga.mutation_rate = d();
        else if (k == "solver.cga_mutation_scale") cga.mutation_scale = d();
        else if (k == "solver.cga_blend_alpha") cga.blend_alpha = d();
        else if (k == "solver.sa_iterations") sa.iterations = n();
        else if (k == "solver.sa_t0") sa.t0 = d();
        else if (k == "solver.sa_step_scale") sa.step_scale = d();
        else throw ScenarioError(k, "unknown key");
    }

    void finish() {
        ScenarioParams& p = file.params;
        if (table.use_table_constants) {
            p.propulsion = PropulsionParams::from_table_constants(
                table.delta_u, table.omega, table.rotor_radius, table.k_u, table.w_u,
                p.propulsion.rho, p.propulsion.s, p.propulsion.a_e, p.propulsion.u_tip,
                p.propulsion.d0);
        }
        p.p_rad.assign(static_cast<std::size_t>(p.uav_count), scalars.p_rad);
        p.b_c.assign(static_cast<std::size_t>(p.uav_count), scalars.b_c);
        p.beta_c.assign(static_cast<std::size_t>(p.uav_count), scalars.beta_c);
        p.validate();
    }
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ScenarioFile parse_scenario_text(const std::string& text) {
    ScenarioFile file;
    file.params = ScenarioParams::defaults();
    Loader loader{file};

    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigParseError("line " + std::to_string(line_no) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError("line " + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigParseError("line " + std::to_string(line_no) + ": key outside any section");
        loader.set(section + "." + key, value);
    }
    loader.finish();
    return file;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot read scenario file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

void apply_override(ScenarioFile& file, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigParseError("override must be section.key=value");
    Loader loader{file};
    // Re-stage per-UAV scalars and table constants from the current params
    // so a single override does not reset earlier ones.
    loader.scalars.p_rad = file.params.p_rad.empty() ? loader.scalars.p_rad : file.params.p_rad.front();
    loader.scalars.b_c = file.params.b_c.empty() ? loader.scalars.b_c : file.params.b_c.front();
    loader.scalars.beta_c = file.params.beta_c.empty() ? loader.scalars.beta_c : file.params.beta_c.front();
    loader.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
    loader.finish();
}

std::string serialize_scenario(const ScenarioFile& file) {
    const ScenarioParams& p = file.params;
    const PropulsionParams& prop = p.propulsion;
    const CoevolutionConfig& co = file.solver.coevolution;
    const CgaConfig& cga = file.solver.cga;
    const SaConfig& sa = file.solver.sa;

    std::ostringstream out;
    out << "[geometry]\n";
    out << "uav_count = " << p.uav_count << "\n";
    out << "slot_count = " << p.slot_count << "\n";
    out << "slot_duration = " << fmt(p.slot_duration) << "\n";
    out << "x_t = " << fmt(p.target_x) << "\n";
    out << "gs_x = " << fmt(p.gs[0]) << "\n";
    out << "gs_y = " << fmt(p.gs[1]) << "\n";
    out << "gs_z = " << fmt(p.gs[2]) << "\n";
    out << "[radar]\n";
    out << "wavelength = " << fmt(p.wavelength) << "\n";
    out << "center_frequency = " << fmt(p.center_frequency) << "\n";
    out << "pulse_bandwidth = " << fmt(p.pulse_bandwidth) << "\n";
    out << "beamwidth_rad = " << fmt(p.beamwidth) << "\n";
    out << "sigma0 = " << fmt(p.sigma0) << "\n";
    out << "gain_tx = " << fmt(p.gain_tx) << "\n";
    out << "gain_rx = " << fmt(p.gain_rx) << "\n";
    out << "prf = " << fmt(p.prf) << "\n";
    out << "pulse_duration = " << fmt(p.pulse_duration) << "\n";
    out << "t_sys = " << fmt(p.t_sys) << "\n";
    out << "noise_figure = " << fmt(p.noise_figure) << "\n";
    out << "losses = " << fmt(p.losses) << "\n";
    out << "gamma_other = " << fmt(p.gamma_other) << "\n";
    out << "n_looks = " << p.looks << "\n";
    out << "n_bits = " << p.bits_per_sample << "\n";
    out << "p_rad_w = " << fmt(p.p_rad.front()) << "\n";
    out << "[comms]\n";
    out << "b_c = " << fmt(p.b_c.front()) << "\n";
    out << "beta_c = " << fmt(p.beta_c.front()) << "\n";
    out << "p_com_max_w = " << fmt(p.p_com_max) << "\n";
    out << "[energy]\n";
    out << "e_max_j = " << fmt(p.e_max) << "\n";
    out << "p0 = " << fmt(prop.p0) << "\n";
    out << "p_i = " << fmt(prop.p_i) << "\n";
    out << "v0 = " << fmt(prop.v0) << "\n";
    out << "u_tip = " << fmt(prop.u_tip) << "\n";
    out << "d0 = " << fmt(prop.d0) << "\n";
    out << "rho = " << fmt(prop.rho) << "\n";
    out << "s = " << fmt(prop.s) << "\n";
    out << "a_e = " << fmt(prop.a_e) << "\n";
    out << "[constraints]\n";
    out << "z_min = " << fmt(p.z_min) << "\n";
    out << "z_max = " << fmt(p.z_max) << "\n";
    out << "theta_min_rad = " << fmt(p.theta_min) << "\n";
    out << "theta_max_rad = " << fmt(p.theta_max) << "\n";
    out << "v_min = " << fmt(p.v_min) << "\n";
    out << "v_max = " << fmt(p.v_max) << "\n";
    out << "d_min = " << fmt(p.d_min) << "\n";
    out << "c_min = " << fmt(p.c_min) << "\n";
    out << "h_amb_min = " << fmt(p.h_amb_min) << "\n";
    out << "phase_pairs = ";
    if (p.phase_pairs.empty()) {
        out << "all";
    } else {
        for (std::size_t k = 0; k < p.phase_pairs.size(); ++k) {
            if (k) out << ",";
            out << (p.phase_pairs[k].first + 1) << "-" << (p.phase_pairs[k].second + 1);
        }
    }
    out << "\n";
    out << "[solver]\n";
    out << "d1 = " << co.inner_population << "\n";
    out << "k1 = " << co.inner_iterations << "\n";
    out << "d2 = " << co.outer_population << "\n";
    out << "k2 = " << co.outer_iterations << "\n";
    out << "c1 = " << fmt(co.c1) << "\n";
    out << "c2 = " << fmt(co.c2) << "\n";
    out << "w_start = " << fmt(co.w_start) << "\n";
    out << "w_end = " << fmt(co.w_end) << "\n";
    out << "v_pso_max = " << fmt(co.v_pso_max) << "\n";
    out << "sigma_h_cap = " << fmt(co.sigma_h_cap) << "\n";
    out << "warm_start = " << (co.warm_start ? "true" : "false") << "\n";
    out << "workers = " << co.worker_count << "\n";
    out << "cga_population = " << cga.population << "\n";
    out << "cga_generations = " << cga.generations << "\n";
    out << "cga_selection_rate = " << fmt(cga.selection_rate) << "\n";
    out << "cga_mutation_rate = " << fmt(cga.mutation_rate) << "\n";
    out << "cga_mutation_scale = " << fmt(cga.mutation_scale) << "\n";
    out << "cga_blend_alpha = " << fmt(cga.blend_alpha) << "\n";
    out << "sa_iterations = " << sa.iterations << "\n";
    out << "sa_t0 = " << fmt(sa.t0) << "\n";
    out << "sa_step_scale = " << fmt(sa.step_scale) << "\n";
    return out.str();
}

}  // namespace swarmplan
