#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hoplink/channel.hpp"

#include <cmath>
#include <vector>

using namespace hoplink;

namespace {

Scenario urban(int hops, double height) {
    Scenario sc;
    sc.distance_sd = 300.0;
    sc.hops = hops;
    sc.uav_height = height;
    sc.uav_ground_offset = 150.0;
    return sc;
}

} // namespace

TEST_CASE("transmitter positions are equidistant, source first") {
    Scenario sc = urban(3, 300.0);
    CHECK(transmitter_position(sc, 1) == 0.0);
    CHECK(transmitter_position(sc, 3) == doctest::Approx(200.0));
    sc.hops = 7;
    CHECK(transmitter_position(sc, 4) == doctest::Approx(128.57142857142858).epsilon(1e-15));
    CHECK_THROWS_AS((void)transmitter_position(sc, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)transmitter_position(sc, 8), std::invalid_argument);
}

TEST_CASE("uav distance is the slant range") {
    Scenario sc = urban(2, 300.0);
    // Second transmitter sits at the midpoint, right under the observer.
    CHECK(uav_distance(sc, 2) == doctest::Approx(300.0));
    CHECK(uav_distance(sc, 1) == doctest::Approx(335.4101966249685).epsilon(1e-15));
}

TEST_CASE("mirror transmitters see identical channels") {
    Scenario sc = urban(7, 420.0);
    const auto channels = hop_channels(sc);
    // Hop-n transmitter is node n-1; nodes k and N-k mirror about the midpoint.
    for (int n = 2; n <= 7; ++n) {
        const int mirror = 7 - (n - 1) + 1;
        CHECK(uav_distance(sc, n) == doctest::Approx(uav_distance(sc, mirror)).epsilon(1e-15));
        const auto& a = channels[static_cast<std::size_t>(n - 1)];
        const auto& b = channels[static_cast<std::size_t>(mirror - 1)];
        CHECK(a.secrecy_coeff == doctest::Approx(b.secrecy_coeff).epsilon(1e-15));
        CHECK(a.covert_coeff == doctest::Approx(b.covert_coeff).epsilon(1e-15));
        CHECK(a.p_los == doctest::Approx(b.p_los).epsilon(1e-15));
    }
}

TEST_CASE("elevation angle") {
    CHECK(elevation_angle_deg(300.0, 300.0) == doctest::Approx(90.0));
    CHECK(elevation_angle_deg(300.0, 600.0) == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(elevation_angle_deg(300.0, 335.4101966249685) ==
          doctest::Approx(63.43494882292201).epsilon(1e-14));
    CHECK_THROWS_AS((void)elevation_angle_deg(300.0, 299.0), std::invalid_argument);
    CHECK_THROWS_AS((void)elevation_angle_deg(0.0, 100.0), std::invalid_argument);
}

TEST_CASE("los probability anchor values") {
    // At theta = C the exponent vanishes and the value is 1/(1+C).
    CHECK(los_probability(11.95, 0.136, 11.95) ==
          doctest::Approx(1.0 / 12.95).epsilon(1e-15));
    CHECK(los_probability(0.0, 0.136, 11.95) ==
          doctest::Approx(0.016207653459802424).epsilon(1e-13));
    CHECK(los_probability(90.0, 0.136, 11.95) ==
          doctest::Approx(0.99970671392224986).epsilon(1e-13));
    CHECK(los_probability(90.0, 0.136, 11.95) > 0.999);
}

TEST_CASE("los probability is strictly increasing and bounded") {
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double theta = 90.0 * i / 200.0;
        const double p = los_probability(theta, 0.136, 11.95);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
        if (i > 0) CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("hop channels collapse when both large-scale states match") {
    Scenario sc = urban(3, 300.0);
    sc.excess_nlos = 1.0;
    sc.path_loss_nlos = sc.path_loss_los;
    for (const auto& h : hop_channels(sc)) {
        const double expected = sc.noise_normalized * std::pow(h.dist_uav, sc.path_loss_los);
        CHECK(h.secrecy_coeff == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("hop channels match an independent recomputation") {
    // Recompute every quantity from the raw definitions, single hop at a time,
    // with the mixture terms assembled in a different order.
    Scenario sc = urban(7, 300.0);
    const auto channels = hop_channels(sc);
    REQUIRE(channels.size() == 7);
    for (int n = 1; n <= 7; ++n) {
        const double pos = (n - 1) * sc.distance_sd / 7.0;
        const double dx = sc.uav_ground_offset - pos;
        const double d = std::sqrt(sc.uav_height * sc.uav_height + dx * dx);
        const double theta = std::asin(sc.uav_height / d) / std::acos(-1.0) * 180.0;
        const double w = 1.0 / (1.0 + sc.env_c * std::exp(-sc.env_b * (theta - sc.env_c)));
        const double b = sc.noise_normalized *
                         (w * std::pow(d, sc.path_loss_los) +
                          (1.0 - w) * std::pow(d, sc.path_loss_nlos) / sc.excess_nlos);
        const double c =
            (sc.codeword_length / 2.0) *
            (w * std::pow(d, -2.0 * sc.path_loss_los) +
             (1.0 - w) * sc.excess_nlos * sc.excess_nlos * std::pow(d, -2.0 * sc.path_loss_nlos)) /
            std::pow(sc.noise_normalized, 2.0);
        const auto& h = channels[static_cast<std::size_t>(n - 1)];
        CHECK(h.dist_uav == doctest::Approx(d).epsilon(1e-14));
        CHECK(h.elevation_deg == doctest::Approx(theta).epsilon(1e-13));
        CHECK(h.p_los == doctest::Approx(w).epsilon(1e-13));
        CHECK(h.secrecy_coeff == doctest::Approx(b).epsilon(1e-12));
        CHECK(h.covert_coeff == doctest::Approx(c).epsilon(1e-12));
        CHECK(h.secrecy_coeff > 0.0);
        CHECK(h.covert_coeff > 0.0);
        CHECK(h.dist_uav >= sc.uav_height);
    }
}

TEST_CASE("known hop table for three hops under urban defaults") {
    const auto channels = hop_channels(urban(3, 300.0));
    CHECK(channels[0].dist_uav == doctest::Approx(335.41019662496848).epsilon(1e-14));
    CHECK(channels[0].p_los == doctest::Approx(0.98924128090062391).epsilon(1e-12));
    CHECK(channels[0].secrecy_coeff == doctest::Approx(0.001472562451593784).epsilon(1e-12));
    CHECK(channels[0].covert_coeff == doctest::Approx(116517442.56406668).epsilon(1e-12));
    CHECK(channels[1].dist_uav == doctest::Approx(304.13812651491099).epsilon(1e-14));
    CHECK(channels[1].secrecy_coeff == doctest::Approx(0.0002563013460902416).epsilon(1e-12));
    CHECK(channels[1].covert_coeff == doctest::Approx(191935147.04367027).epsilon(1e-12));
    CHECK(channels[2].secrecy_coeff == doctest::Approx(channels[1].secrecy_coeff));
}

TEST_CASE("secrecy coefficient lies between the pure-state extremes") {
    for (double height : {120.0, 300.0, 900.0}) {
        Scenario sc = urban(5, height);
        for (const auto& h : hop_channels(sc)) {
            const double pure_los = sc.noise_normalized * std::pow(h.dist_uav, sc.path_loss_los);
            const double pure_nlos =
                sc.noise_normalized * std::pow(h.dist_uav, sc.path_loss_nlos) / sc.excess_nlos;
            CHECK(h.secrecy_coeff >= std::min(pure_los, pure_nlos));
            CHECK(h.secrecy_coeff <= std::max(pure_los, pure_nlos));
        }
    }
}

TEST_CASE("covert coefficient approaches the pure line-of-sight form overhead") {
    // Transmitter directly under the observer: theta = 90, p_los ~ 0.9997, and
    // the NLoS term is suppressed by eta^2, so c_n sits within 0.1% of the
    // single-state value (L/2) d^{-2 beta1} / sigma^4.
    Scenario sc = urban(1, 300.0);
    sc.uav_ground_offset = 0.0;
    const auto h = hop_channels(sc)[0];
    CHECK(h.elevation_deg == doctest::Approx(90.0));
    const double pure = (sc.codeword_length / 2.0) *
                        std::pow(h.dist_uav, -2.0 * sc.path_loss_los) /
                        (sc.noise_normalized * sc.noise_normalized);
    CHECK(h.covert_coeff == doctest::Approx(pure).epsilon(1e-3));
    CHECK(h.covert_coeff < pure);
}

TEST_CASE("connection probability") {
    Scenario sc = urban(3, 300.0);
    const std::vector<double> p{0.5, 0.3, 0.2};
    CHECK(connection_probability(p, 0.0, sc) == 1.0);

    Scenario one = urban(1, 300.0);
    const double gamma_c = 7.0;
    const double unit_power = gamma_c * std::pow(one.hop_distance(), one.path_loss_terrestrial) *
                              one.noise_normalized;
    const std::vector<double> p1{unit_power};
    CHECK(connection_probability(p1, gamma_c, one) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

    // Strictly increasing in every power, strictly decreasing in gamma_c.
    const double base = connection_probability(p, 2.0, sc);
    std::vector<double> more = p;
    more[1] *= 1.5;
    CHECK(connection_probability(more, 2.0, sc) > base);
    CHECK(connection_probability(p, 2.5, sc) < base);

    const std::vector<double> bad{0.5, 0.0, 0.2};
    CHECK_THROWS_AS((void)connection_probability(bad, 2.0, sc), std::invalid_argument);
}

TEST_CASE("secrecy outage probability basics") {
    Scenario sc = urban(3, 300.0);
    const auto channels = hop_channels(sc);
    const std::vector<double> p{0.01, 0.01, 0.01};

    // Huge redundancy threshold kills all leakage.
    CHECK(secrecy_outage_probability(p, 1e12, channels) == doctest::Approx(0.0));

    Scenario one = urban(1, 300.0);
    const auto c1 = hop_channels(one);
    const std::vector<double> p1{0.01};
    const double expected = std::exp(-2.0 * c1[0].secrecy_coeff / 0.01);
    CHECK(secrecy_outage_probability(p1, 2.0, c1) == doctest::Approx(expected).epsilon(1e-13));

    // Monotone increasing in each power (more power leaks more).
    const double base = secrecy_outage_probability(p, 2.0, channels);
    std::vector<double> more = p;
    more[0] *= 2.0;
    CHECK(secrecy_outage_probability(more, 2.0, channels) > base);
}

TEST_CASE("per-hop smoothing never understates security") {
    // The smoothed per-hop security probability 1 - exp(-gamma b/p) dominates
    // the exact two-state mixture for every (p, gamma) pair on a grid.
    Scenario sc = urban(4, 250.0);
    const auto channels = hop_channels(sc);
    for (const auto& h : channels) {
        for (double gamma : {0.5, 2.0, 8.0, 64.0}) {
            for (double p : {1e-4, 1e-3, 1e-2, 1e-1}) {
                const double x_los = gamma * std::pow(h.dist_uav, sc.path_loss_los) *
                                     sc.noise_normalized / p;
                const double x_nlos = gamma * std::pow(h.dist_uav, sc.path_loss_nlos) *
                                      sc.noise_normalized / (sc.excess_nlos * p);
                const double exact = h.p_los * (1.0 - std::exp(-x_los)) +
                                     (1.0 - h.p_los) * (1.0 - std::exp(-x_nlos));
                const double smoothed = 1.0 - std::exp(-gamma * h.secrecy_coeff / p);
                CHECK(smoothed >= exact - 1e-12);
            }
        }
    }
}

TEST_CASE("scenario validation rejects bad fields") {
    Scenario sc = urban(3, 300.0);
    sc.excess_nlos = 1.5;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc = urban(3, 300.0);
    sc.uav_ground_offset = 400.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
    sc = urban(0, 300.0);
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
}
