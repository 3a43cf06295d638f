#pragma once

#include "hoplink/channel.hpp"

#include <span>
#include <vector>

namespace hoplink::covert {

struct Constraints {
    double epsilon = 0.05;     // detection-error budget, in (0, 1)
    double power_total = 1.0;  // aggregate transmit power [W]

    void validate() const;
};

/// Quadratic upper bound on the observer's total divergence: sum_n c_n p_n^2.
double kl_bound(std::span<const double> powers, std::span<const HopChannel> channels);

/// Powers minimizing sum_n 1/p_n subject to kl_bound <= 2 eps^2 and
/// sum p_n <= P_T, with the KKT multipliers certifying optimality:
/// -1/p_n^2 + 2 lambda_kl c_n p_n + mu_pow = 0 per hop.
struct Allocation {
    std::vector<double> powers;
    double lambda_kl = 0.0;  // multiplier of the divergence constraint
    double mu_pow = 0.0;     // multiplier of the power constraint
};

Allocation allocate_power(std::span<const HopChannel> channels, const Constraints& cs);

/// Transmission rate maximizing exp(-(2^R - 1) a2) * R.
double optimal_rate(double a2);

struct Solution {
    int hops = 0;
    std::vector<double> powers;
    double rate_tx = 0.0;   // [b/s/Hz]
    double p_connect = 0.0;
    double kl_bound = 0.0;  // value of the quadratic divergence bound [nats]
    double throughput = 0.0;  // P_c * R_t / N
    double a2 = 0.0;          // sum_n d_tr^alpha sigma^2 / p_n
    double lambda_kl = 0.0;
    double mu_pow = 0.0;
};

Solution evaluate(const Scenario& sc, std::span<const HopChannel> channels,
                  const Constraints& cs);

/// Baseline: the largest feasible common power min(P_T/N, sqrt(2 eps^2 / sum c_n)).
Solution evaluate_equal_power(const Scenario& sc, std::span<const HopChannel> channels,
                              const Constraints& cs);

struct HopSearch {
    int best_hops = 0;
    Solution best;
    std::vector<Solution> evaluated;
};

HopSearch search_hops(Scenario sc, const Constraints& cs, int max_hops);

} // namespace hoplink::covert
