#pragma once

#include "hoplink/channel.hpp"

#include <span>
#include <vector>

namespace hoplink::secrecy {

struct Constraints {
    double zeta = 0.1;         // secrecy-outage budget, in (0, 1)
    double power_total = 1.0;  // aggregate transmit power [W]

    void validate() const;
};

/// Closed-form power split: per-hop exponent targets t_n, the wiretap SNR
/// threshold gamma_e and powers p_n = gamma_e / t_n. Both constraints are
/// active: sum p_n = P_T and sum exp(-b_n t_n) = zeta.
struct Allocation {
    double gamma_e = 0.0;
    std::vector<double> powers;
    std::vector<double> t;
};

struct Solution {
    int hops = 0;
    std::vector<double> powers;
    double gamma_e = 0.0;          // wiretap SNR threshold
    double rate_tx = 0.0;          // transmission rate [b/s/Hz]
    double rate_secret = 0.0;      // secrecy rate [b/s/Hz]
    double rate_redundancy = 0.0;  // rate_tx - rate_secret
    double p_connect = 0.0;
    double p_secrecy_outage = 0.0;  // product form; slightly below zeta
    double throughput = 0.0;        // P_c * R_s / N
    double a1 = 0.0;                // connection-exponent coefficient
};

Allocation allocate_power(std::span<const HopChannel> channels, const Constraints& cs);

/// Secrecy rate maximizing exp(-((gamma_e+1) 2^R - 1) a1/gamma_e) * R; the
/// unique stationary point of that quasi-concave objective.
double optimal_secrecy_rate(double gamma_e, double a1);

Solution evaluate(const Scenario& sc, std::span<const HopChannel> channels,
                  const Constraints& cs);

/// Baseline: all transmitters at the same power P_T/N, threshold re-derived so
/// the outage budget stays met, rates re-optimized the same way.
Solution evaluate_equal_power(const Scenario& sc, std::span<const HopChannel> channels,
                              const Constraints& cs);

struct HopSearch {
    int best_hops = 0;
    Solution best;
    std::vector<Solution> evaluated;  // index i holds the N = i+1 solution
};

/// One-dimensional search over N = 1..max_hops; ties break toward smaller N.
HopSearch search_hops(Scenario sc, const Constraints& cs, int max_hops);

} // namespace hoplink::secrecy
