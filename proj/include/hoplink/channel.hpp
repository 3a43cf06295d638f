#pragma once

#include <span>
#include <vector>

namespace hoplink {

/// Geometry and channel constants for a linear multi-hop network observed by
/// an aerial node. Transmitters (source plus relays) sit equidistantly on the
/// source-destination axis; internal units are meters, watts and linear ratios.
struct Scenario {
    double distance_sd = 300.0;        // source-destination distance [m]
    int hops = 1;                      // number of hops N (relays = N - 1)
    double uav_height = 300.0;         // observer altitude [m]
    double uav_ground_offset = 150.0;  // ground projection along the axis [m]
    double path_loss_terrestrial = 3.0;
    double path_loss_los = 2.5;
    double path_loss_nlos = 2.8;
    double env_b = 0.136;              // LoS-probability slope constant
    double env_c = 11.95;              // LoS-probability offset constant
    double excess_nlos = 0.01;         // NLoS excess attenuation, linear in (0,1]
    double noise_normalized = 1e-10;   // noise power over reference path loss [W]
    int codeword_length = 10;          // samples per hop seen by the observer
    double ref_path_loss = 1e-4;       // path loss at 1 m, linear; absolute-power bookkeeping

    double hop_distance() const { return distance_sd / hops; }

    /// Throws std::invalid_argument on any violated field constraint.
    void validate() const;
};

/// Per-hop derived quantities consumed by both optimizers.
struct HopChannel {
    int index = 0;          // 1-based hop index
    double dist_uav = 0.0;  // transmitter-to-observer distance [m]
    double elevation_deg = 0.0;
    double p_los = 0.0;
    double secrecy_coeff = 0.0;  // b_n: effective wiretap attenuation [W]
    double covert_coeff = 0.0;   // c_n: quadratic divergence coefficient [1/W^2]
};

/// Position of the hop-n transmitter along the axis; node n-1, source is node 0.
double transmitter_position(const Scenario& sc, int hop);

/// Euclidean distance from the hop-n transmitter to the aerial observer.
double uav_distance(const Scenario& sc, int hop);

/// Elevation angle in degrees seen from a ground node at slant distance d.
/// Requires 0 < height <= dist.
double elevation_angle_deg(double height, double dist);

/// Logistic line-of-sight probability 1 / (1 + C exp(-B (theta - C))).
double los_probability(double theta_deg, double env_b, double env_c);

/// All per-hop channels for the scenario, hop 1..N.
std::vector<HopChannel> hop_channels(const Scenario& sc);

/// End-to-end connection probability exp(-sum_n gamma_c d_tr^alpha sigma^2 / p_n).
double connection_probability(std::span<const double> powers, double gamma_c,
                              const Scenario& sc);

/// End-to-end secrecy outage 1 - prod_n (1 - exp(-gamma_e b_n / p_n)),
/// using the smoothed per-hop wiretap coefficient b_n.
double secrecy_outage_probability(std::span<const double> powers, double gamma_e,
                                  std::span<const HopChannel> channels);

} // namespace hoplink
