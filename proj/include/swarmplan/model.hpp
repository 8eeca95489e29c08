#pragma once

#include <span>
#include <vector>

#include "swarmplan/scenario.hpp"

namespace swarmplan {

struct Position {
    double x = 0.0;  // across-track range coordinate (m)
    double z = 0.0;  // altitude (m)
};

// Across-track formation; index 0 is the master UAV.
struct Formation {
    std::vector<Position> q;

    int size() const { return static_cast<int>(q.size()); }
    static Formation from_vector(std::span<const double> flat);  // (x1,z1,...,xI,zI)
    std::vector<double> to_vector() const;
};

struct LookGeometry {
    double theta;  // look angle (rad)
    double range;  // slant range to the target line (m)
};

struct BaselineGeometry {
    double baseline;  // |q_i - q_j| (m)
    double tilt;      // baseline angle vs horizontal (rad)
    double b_perp;    // perpendicular baseline (m)
};

struct CoherenceParts {
    double gamma_snr;
    double gamma_rg;
    double gamma;  // total, includes gamma_other
};

// Per-pair InSAR geometry and error terms.
struct PairMetrics {
    int i = 0, j = 0;
    double baseline = 0.0;
    double tilt = 0.0;
    double b_perp = 0.0;
    double gamma_snr = 0.0;
    double gamma_rg = 0.0;
    double gamma = 0.0;
    double hoa = 0.0;          // +inf when b_perp == 0
    double sigma_phi = 0.0;    // rad
    double sigma_h_pair = 0.0; // m, +inf when hoa is infinite
};

struct CoverageResult {
    std::vector<double> swaths;  // per UAV (m)
    double total;                // m^2
};

// --- closed-form sensing model -----------------------------------------

LookGeometry look_angle_and_range(Position q, double target_x);
BaselineGeometry baseline_geometry(Position q_i, Position q_j, double target_x);
CoverageResult swath_and_coverage(const Formation& f, double v_y, const ScenarioParams& p);
std::vector<double> snr(const Formation& f, double v_y, const ScenarioParams& p);
CoherenceParts coherence(double theta_i, double theta_j, double snr_i, double snr_j,
                         const ScenarioParams& p);
double hoa(double theta_i, double r_i, double b_perp, double wavelength);
struct PhaseError {
    double sigma_phi;
    double sigma_h_pair;
};
PhaseError pair_height_error(double gamma, int looks, double h_amb);
double fused_height_error(std::span<const double> sigma_h_pairs);

// Full per-pair evaluation for a formation at a given swarm velocity.
std::vector<PairMetrics> evaluate_pairs(const Formation& f, double v_y, const ScenarioParams& p);

// Inverse-variance fusion over all pairs; pairs with infinite HoA carry
// zero weight. Returns +inf when no pair has height sensitivity.
double fused_from_pairs(std::span<const PairMetrics> pairs);

}  // namespace swarmplan
