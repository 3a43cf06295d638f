#include "hoplink/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hoplink {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace

void Scenario::validate() const {
    require(distance_sd > 0.0, "scenario: distance_sd must be positive");
    require(hops >= 1, "scenario: hops must be >= 1");
    require(uav_height > 0.0, "scenario: uav_height must be positive");
    require(uav_ground_offset >= 0.0 && uav_ground_offset <= distance_sd,
            "scenario: uav_ground_offset must lie in [0, distance_sd]");
    require(path_loss_terrestrial > 0.0, "scenario: path_loss_terrestrial must be positive");
    require(path_loss_los > 0.0, "scenario: path_loss_los must be positive");
    require(path_loss_nlos > 0.0, "scenario: path_loss_nlos must be positive");
    require(env_b > 0.0, "scenario: env_b must be positive");
    require(env_c > 0.0, "scenario: env_c must be positive");
    require(excess_nlos > 0.0 && excess_nlos <= 1.0,
            "scenario: excess_nlos must lie in (0, 1]");
    require(noise_normalized > 0.0, "scenario: noise_normalized must be positive");
    require(codeword_length >= 1, "scenario: codeword_length must be >= 1");
    require(ref_path_loss > 0.0, "scenario: ref_path_loss must be positive");
}

double transmitter_position(const Scenario& sc, int hop) {
    if (hop < 1 || hop > sc.hops)
        throw std::invalid_argument("transmitter_position: hop index out of range");
    return (hop - 1) * sc.distance_sd / sc.hops;
}

double uav_distance(const Scenario& sc, int hop) {
    const double dx = sc.uav_ground_offset - transmitter_position(sc, hop);
    return std::hypot(sc.uav_height, dx);
}

double elevation_angle_deg(double height, double dist) {
    if (!(height > 0.0) || dist < height)
        throw std::invalid_argument("elevation_angle_deg: need 0 < height <= dist");
    return std::asin(height / dist) * 180.0 / std::numbers::pi;
}

double los_probability(double theta_deg, double env_b, double env_c) {
    if (!(env_b > 0.0) || !(env_c > 0.0))
        throw std::invalid_argument("los_probability: env constants must be positive");
    return 1.0 / (1.0 + env_c * std::exp(-env_b * (theta_deg - env_c)));
}

std::vector<HopChannel> hop_channels(const Scenario& sc) {
    sc.validate();
    const double sigma2 = sc.noise_normalized;
    const double eta = sc.excess_nlos;
    std::vector<HopChannel> out;
    out.reserve(static_cast<std::size_t>(sc.hops));
    for (int n = 1; n <= sc.hops; ++n) {
        HopChannel h;
        h.index = n;
        h.dist_uav = uav_distance(sc, n);
        h.elevation_deg = elevation_angle_deg(sc.uav_height, h.dist_uav);
        h.p_los = los_probability(h.elevation_deg, sc.env_b, sc.env_c);
        const double d_b1 = std::pow(h.dist_uav, sc.path_loss_los);
        const double d_b2 = std::pow(h.dist_uav, sc.path_loss_nlos);
        h.secrecy_coeff = (sigma2 / eta) * (h.p_los * eta * d_b1 + (1.0 - h.p_los) * d_b2);
        h.covert_coeff = 0.5 * sc.codeword_length *
                         (h.p_los / (d_b1 * d_b1) + (1.0 - h.p_los) * eta * eta / (d_b2 * d_b2)) /
                         (sigma2 * sigma2);
        out.push_back(h);
    }
    return out;
}

double connection_probability(std::span<const double> powers, double gamma_c,
                              const Scenario& sc) {
    if (gamma_c < 0.0)
        throw std::invalid_argument("connection_probability: gamma_c must be >= 0");
    const double k = gamma_c * std::pow(sc.hop_distance(), sc.path_loss_terrestrial) *
                     sc.noise_normalized;
    double expo = 0.0;
    for (double p : powers) {
        if (!(p > 0.0))
            throw std::invalid_argument("connection_probability: powers must be positive");
        expo += k / p;
    }
    return std::exp(-expo);
}

double secrecy_outage_probability(std::span<const double> powers, double gamma_e,
                                  std::span<const HopChannel> channels) {
    if (!(gamma_e > 0.0))
        throw std::invalid_argument("secrecy_outage_probability: gamma_e must be positive");
    if (powers.size() != channels.size())
        throw std::invalid_argument("secrecy_outage_probability: powers/channels size mismatch");
    double secure = 1.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (!(powers[i] > 0.0))
            throw std::invalid_argument("secrecy_outage_probability: powers must be positive");
        secure *= 1.0 - std::exp(-gamma_e * channels[i].secrecy_coeff / powers[i]);
    }
    return 1.0 - secure;
}

} // namespace hoplink
