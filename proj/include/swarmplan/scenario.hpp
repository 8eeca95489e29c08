#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swarmplan {

// Raised when a scenario field violates its validity range. Carries the
// offending key so the CLI can name it.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct PropulsionParams {
    // Canonical rotary-wing constants; the table-driven alternative is
    // derived in from_table_constants().
    double p0 = 79.8563;    // blade profile power at hover (W)
    double p_i = 88.6279;   // induced power at hover (W)
    double v0 = 4.03;       // mean rotor induced velocity at hover (m/s)
    double u_tip = 120.0;   // rotor tip speed (m/s)
    double d0 = 0.6;        // fuselage drag ratio
    double rho = 1.225;     // air density (kg/m^3)
    double s = 0.05;        // rotor solidity
    double a_e = 0.503;     // rotor disc area (m^2)

    static PropulsionParams from_table_constants(double delta_u, double omega,
                                                 double rotor_radius, double k_u,
                                                 double weight_n, double rho,
                                                 double s, double a_e,
                                                 double u_tip, double d0);
};

// All physical, radar, communication, energy, and constraint constants of
// one planning scenario. Angles are stored in radians, powers and gains in
// linear units; dB conversion happens at config load.
struct ScenarioParams {
    // geometry / mission
    int uav_count = 5;
    int slot_count = 200;
    double slot_duration = 1.0;  // s
    double target_x = 20.0;      // m
    std::array<double, 3> gs{70.0, 150.0, 25.0};

    // radar
    double wavelength = 0.12;          // m
    double center_frequency = 2.5e9;   // Hz
    double pulse_bandwidth = 3e9;      // Hz
    double beamwidth = 0.6981317007977318;  // rad (40 deg)
    double sigma0 = 0.1;               // linear
    double gain_tx = 3.1622776601683795;
    double gain_rx = 3.1622776601683795;
    double prf = 1e3;                  // Hz
    double pulse_duration = 1e-7;      // s
    double t_sys = 400.0;              // K
    double noise_figure = 3.1622776601683795;
    double losses = 3.9810717055349722;
    double gamma_other = 0.6;
    int looks = 4;
    int bits_per_sample = 4;
    std::vector<double> p_rad;   // W, per UAV
    std::vector<double> b_c;     // Hz, per UAV
    std::vector<double> beta_c;  // linear, per UAV

    // communication / energy
    double p_com_max = 7.943282347242816;  // W (9 dBW)
    double e_max = 299988.0;               // J (83.33 Wh)
    PropulsionParams propulsion;

    // bounds and QoS constraints
    double z_min = 1.0;
    double z_max = 100.0;
    double theta_min = 0.6499606134426884;  // rad (37.24 deg)
    double theta_max = 0.8499753457212386;  // rad (48.7 deg)
    double v_min = 1.0;
    double v_max = 12.0;
    double d_min = 2.0;
    double c_min = 4.5e4;
    double h_amb_min = 1.2;

    // phase-unwrapping pair set; empty means all pairs (i < j)
    std::vector<std::pair<int, int>> phase_pairs;

    double boltzmann = 1.380649e-23;
    double speed_of_light = 299792458.0;

    // Defaults above are the standard scenario; this fills the per-UAV
    // vectors for the configured UAV count.
    static ScenarioParams defaults(int uav_count = 5);

    double duty_cycle() const { return prf * pulse_duration; }
    double fractional_bandwidth() const { return pulse_bandwidth / center_frequency; }
    double mission_time() const { return slot_count * slot_duration; }
    int pair_count() const { return uav_count * (uav_count - 1) / 2; }

    // Pairs subject to the minimum-HoA constraint.
    std::vector<std::pair<int, int>> unwrap_pairs() const;

    void resize_per_uav();   // broadcast scalar entries to uav_count
    void validate() const;   // throws ScenarioError naming the bad key
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace swarmplan
