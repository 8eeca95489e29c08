#include "swarmplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace swarmplan {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThetaEps = 1e-6;
}  // namespace

Formation Formation::from_vector(std::span<const double> flat) {
    if (flat.size() % 2 != 0) throw std::invalid_argument("formation vector length must be even");
    Formation f;
    f.q.reserve(flat.size() / 2);
    for (std::size_t k = 0; k + 1 < flat.size(); k += 2) f.q.push_back({flat[k], flat[k + 1]});
    return f;
}

std::vector<double> Formation::to_vector() const {
    std::vector<double> flat;
    flat.reserve(q.size() * 2);
    for (const auto& p : q) {
        flat.push_back(p.x);
        flat.push_back(p.z);
    }
    return flat;
}

LookGeometry look_angle_and_range(Position q, double target_x) {
    if (q.z <= 0.0) throw std::domain_error("look_angle_and_range: altitude must be positive");
    double theta = std::atan((target_x - q.x) / q.z);
    double range = std::hypot(q.x - target_x, q.z);
    return {theta, range};
}

BaselineGeometry baseline_geometry(Position q_i, Position q_j, double target_x) {
    double dx = q_j.x - q_i.x;
    double dz = q_j.z - q_i.z;
    double b = std::hypot(dx, dz);
    if (b == 0.0) return {0.0, 0.0, 0.0};  // coincident sensors, tilt by convention 0
    // atan2 keeps the vertical-baseline case (dx == 0) well defined.
    double alpha = std::atan2(dz, dx);
    double theta_i = look_angle_and_range(q_i, target_x).theta;
    return {b, alpha, b * std::cos(theta_i - alpha)};
}

CoverageResult swath_and_coverage(const Formation& f, double v_y, const ScenarioParams& p) {
    CoverageResult result;
    result.swaths.reserve(f.q.size());
    double min_swath = kInf;
    for (const auto& q : f.q) {
        auto [theta, range] = look_angle_and_range(q, p.target_x);
        if (theta >= std::numbers::pi / 2.0 - kThetaEps)
            throw std::domain_error("swath_and_coverage: look angle too close to horizon");
        double s = p.beamwidth * range / std::cos(theta);
        result.swaths.push_back(s);
        min_swath = std::min(min_swath, s);
    }
    result.total = p.slot_count * min_swath * v_y * p.slot_duration;
    return result;
}

std::vector<double> snr(const Formation& f, double v_y, const ScenarioParams& p) {
    // Shared link-budget factor of the mono- and bi-static SNR expressions.
    double lambda3 = p.wavelength * p.wavelength * p.wavelength;
    double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    double common = p.sigma0 * p.gain_tx * p.gain_rx * lambda3 * p.speed_of_light * p.duty_cycle() /
                    (256.0 * pi3 * v_y * p.boltzmann * p.t_sys * p.pulse_bandwidth *
                     p.noise_figure * p.losses);

    auto master = look_angle_and_range(f.q.at(0), p.target_x);
    double r1 = master.range;

    std::vector<double> out;
    out.reserve(f.q.size());
    for (std::size_t i = 0; i < f.q.size(); ++i) {
        auto [theta, range] = look_angle_and_range(f.q[i], p.target_x);
        if (theta <= kThetaEps) throw std::domain_error("snr: look angle too close to nadir");
        double range_product = (i == 0) ? r1 * r1 * r1 : r1 * r1 * range;
        out.push_back(common * p.p_rad[i] / (std::sin(theta) * range_product));
    }
    return out;
}

CoherenceParts coherence(double theta_i, double theta_j, double snr_i, double snr_j,
                         const ScenarioParams& p) {
    double g_snr = 1.0 / std::sqrt((1.0 + 1.0 / snr_i) * (1.0 + 1.0 / snr_j));

    double b_p = p.fractional_bandwidth();
    double chi = std::sin(std::max(theta_i, theta_j)) /
                 (0.5 * (std::sin(theta_i) + std::sin(theta_j)));
    double g_rg = ((2.0 + b_p) / (1.0 + chi) - (2.0 - b_p) / (1.0 + 1.0 / chi)) / b_p;

    return {g_snr, g_rg, g_rg * g_snr * p.gamma_other};
}

double hoa(double theta_i, double r_i, double b_perp, double wavelength) {
    if (b_perp == 0.0) return kInf;
    return wavelength * r_i * std::sin(theta_i) / b_perp;
}

PhaseError pair_height_error(double gamma, int looks, double h_amb) {
    if (gamma <= 0.0 || gamma > 1.0)
        throw std::domain_error("pair_height_error: coherence must be in (0, 1]");
    double sigma_phi = std::sqrt((1.0 - gamma * gamma) / (2.0 * looks)) / gamma;
    return {sigma_phi, h_amb * sigma_phi / (2.0 * std::numbers::pi)};
}

double fused_height_error(std::span<const double> sigma_h_pairs) {
    if (sigma_h_pairs.empty()) throw std::domain_error("fused_height_error: empty input");
    double inv_var_sum = 0.0;
    for (double s : sigma_h_pairs) {
        if (s <= 0.0) throw std::domain_error("fused_height_error: entries must be positive");
        inv_var_sum += 1.0 / (s * s);
    }
    return 1.0 / std::sqrt(inv_var_sum);
}

std::vector<PairMetrics> evaluate_pairs(const Formation& f, double v_y, const ScenarioParams& p) {
    auto snrs = snr(f, v_y, p);
    std::vector<LookGeometry> looks(f.q.size());
    for (std::size_t i = 0; i < f.q.size(); ++i) looks[i] = look_angle_and_range(f.q[i], p.target_x);

    std::vector<PairMetrics> pairs;
    pairs.reserve(f.q.size() * (f.q.size() - 1) / 2);
    for (std::size_t i = 0; i < f.q.size(); ++i) {
        for (std::size_t j = i + 1; j < f.q.size(); ++j) {
            PairMetrics m;
            m.i = static_cast<int>(i);
            m.j = static_cast<int>(j);
            auto geo = baseline_geometry(f.q[i], f.q[j], p.target_x);
            m.baseline = geo.baseline;
            m.tilt = geo.tilt;
            m.b_perp = geo.b_perp;
            auto coh = coherence(looks[i].theta, looks[j].theta, snrs[i], snrs[j], p);
            m.gamma_snr = coh.gamma_snr;
            m.gamma_rg = coh.gamma_rg;
            m.gamma = coh.gamma;
            // Stored as a magnitude: the sign of b_perp only encodes which
            // side of the line of sight the pair sits on.
            m.hoa = std::abs(hoa(looks[i].theta, looks[i].range, geo.b_perp, p.wavelength));
            if (std::isinf(m.hoa)) {
                m.sigma_phi = pair_height_error(m.gamma, p.looks, 0.0).sigma_phi;
                m.sigma_h_pair = kInf;
            } else {
                auto err = pair_height_error(m.gamma, p.looks, m.hoa);
                m.sigma_phi = err.sigma_phi;
                m.sigma_h_pair = err.sigma_h_pair;
            }
            pairs.push_back(m);
        }
    }
    return pairs;
}

double fused_from_pairs(std::span<const PairMetrics> pairs) {
    double inv_var_sum = 0.0;
    for (const auto& m : pairs) {
        if (!std::isfinite(m.sigma_h_pair) || m.sigma_h_pair <= 0.0) continue;  // zero weight
        inv_var_sum += 1.0 / (m.sigma_h_pair * m.sigma_h_pair);
    }
    if (inv_var_sum == 0.0) return kInf;
    return 1.0 / std::sqrt(inv_var_sum);
}

}  // namespace swarmplan
