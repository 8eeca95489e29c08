#include "swarmplan/scenario.hpp"

#include <cmath>

namespace swarmplan {

PropulsionParams PropulsionParams::from_table_constants(double delta_u, double omega,
                                                        double rotor_radius, double k_u,
                                                        double weight_n, double rho,
                                                        double s, double a_e,
                                                        double u_tip, double d0) {
    PropulsionParams p;
    p.rho = rho;
    p.s = s;
    p.a_e = a_e;
    p.u_tip = u_tip;
    p.d0 = d0;
    double omega_r = omega * rotor_radius;
    p.p0 = delta_u / 8.0 * rho * s * a_e * omega_r * omega_r * omega_r;
    p.p_i = (1.0 + k_u) * std::pow(weight_n, 1.5) / std::sqrt(2.0 * rho * a_e);
    p.v0 = std::sqrt(weight_n / (2.0 * rho * a_e));
    return p;
}

ScenarioParams ScenarioParams::defaults(int uav_count) {
    ScenarioParams p;
    p.uav_count = uav_count;
    p.resize_per_uav();
    return p;
}

void ScenarioParams::resize_per_uav() {
    auto fill = [this](std::vector<double>& v, double fallback) {
        double value = v.empty() ? fallback : v.front();
        v.assign(static_cast<std::size_t>(uav_count), value);
    };
    fill(p_rad, db_to_linear(15.0));
    fill(b_c, 1e9);
    fill(beta_c, db_to_linear(20.0));
}

std::vector<std::pair<int, int>> ScenarioParams::unwrap_pairs() const {
    if (!phase_pairs.empty()) return phase_pairs;
    std::vector<std::pair<int, int>> all;
    all.reserve(static_cast<std::size_t>(pair_count()));
    for (int i = 0; i < uav_count; ++i)
        for (int j = i + 1; j < uav_count; ++j) all.emplace_back(i, j);
    return all;
}

void ScenarioParams::validate() const {
    auto require = [](bool ok, const char* key, const char* msg) {
        if (!ok) throw ScenarioError(key, msg);
    };
    require(uav_count >= 2, "uav_count", "at least 2 UAVs required");
    require(slot_count >= 1, "slot_count", "must be positive");
    require(slot_duration > 0.0, "slot_duration", "must be positive");
    require(wavelength > 0.0, "wavelength", "must be positive");
    require(center_frequency > 0.0, "center_frequency", "must be positive");
    require(pulse_bandwidth > 0.0, "pulse_bandwidth", "must be positive");
    require(beamwidth > 0.0, "beamwidth", "must be positive");
    require(sigma0 > 0.0, "sigma0", "must be positive");
    require(gain_tx > 0.0, "gain_tx", "must be positive");
    require(gain_rx > 0.0, "gain_rx", "must be positive");
    require(prf > 0.0, "prf", "must be positive");
    require(pulse_duration > 0.0, "pulse_duration", "must be positive");
    require(t_sys > 0.0, "t_sys", "must be positive");
    require(noise_figure > 0.0, "noise_figure", "must be positive");
    require(losses > 0.0, "losses", "must be positive");
    require(gamma_other > 0.0 && gamma_other <= 1.0, "gamma_other", "must be in (0, 1]");
    require(looks >= 1, "looks", "must be at least 1");
    require(bits_per_sample >= 1, "bits_per_sample", "must be at least 1");
    require(p_com_max > 0.0, "p_com_max", "must be positive");
    require(e_max >= 0.0, "e_max", "must be non-negative");
    require(z_min > 0.0, "z_min", "must be positive");
    require(z_min <= z_max, "z_min", "must not exceed z_max");
    require(theta_min < theta_max, "theta_min", "must be below theta_max");
    require(theta_min > 0.0, "theta_min", "must be positive");
    require(theta_max < 1.5707963267948966, "theta_max", "must be below 90 deg");
    require(v_min <= v_max, "v_min", "must not exceed v_max");
    require(v_min > 0.0, "v_min", "must be positive");
    require(d_min >= 0.0, "d_min", "must be non-negative");
    require(c_min >= 0.0, "c_min", "must be non-negative");
    require(h_amb_min >= 0.0, "h_amb_min", "must be non-negative");
    require(propulsion.u_tip > 0.0, "u_tip", "must be positive");
    require(propulsion.v0 > 0.0, "v0", "must be positive");

    auto require_vec = [&](const std::vector<double>& v, const char* key) {
        require(v.size() == static_cast<std::size_t>(uav_count), key, "length must equal uav_count");
        for (double x : v) require(x > 0.0, key, "entries must be positive");
    };
    require_vec(p_rad, "p_rad");
    require_vec(b_c, "b_c");
    require_vec(beta_c, "beta_c");

    for (auto [i, j] : phase_pairs) {
        require(i >= 0 && j > i && j < uav_count, "phase_pairs", "pairs must satisfy 0 <= i < j < uav_count");
    }
}

}  // namespace swarmplan
