#pragma once

#include "hoplink/channel.hpp"

#include <cstdint>
#include <span>

namespace hoplink::sim {

/// A Monte Carlo estimate with a normal-approximation 95% confidence
/// half-width. Identical (seed, inputs) give identical estimates regardless
/// of the thread count.
struct Estimate {
    double value = 0.0;
    std::int64_t trials = 0;
    double half_width_95 = 0.0;
    std::uint64_t seed = 0;
};

/// Empirical probability that every hop's receiver decodes at rate_tx,
/// sampling the terrestrial fading per hop per trial.
Estimate mc_connection(const Scenario& sc, std::span<const double> powers,
                       double rate_tx, std::int64_t trials, std::uint64_t seed,
                       int threads = 1);

/// Empirical end-to-end secrecy outage at redundancy rate_redundancy, sampling
/// the LoS/NLoS state and the air-to-ground fading per hop per trial. This is
/// the exact mixture definition, without the smoothed per-hop coefficient.
Estimate mc_secrecy_outage(const Scenario& sc, std::span<const double> powers,
                           double rate_redundancy, std::int64_t trials,
                           std::uint64_t seed, int threads = 1);

/// Per-hop divergence between the observer's received-sample distribution
/// under transmission (LoS/NLoS mixture of complex Gaussians) and noise,
/// in nats, for a whole codeword block: codeword_length times the per-sample
/// mixture divergence, evaluated by adaptive quadrature.
double true_kl_per_hop(const Scenario& sc, double power, int hop,
                       double rel_tol = 1e-9);

/// Minimum of (false alarm + missed detection) over likelihood-ratio
/// thresholds for an observer applying the exact marginal likelihoods; trials
/// are split evenly between the two hypotheses.
Estimate warden_detection_error(const Scenario& sc, std::span<const double> powers,
                                std::int64_t trials, std::uint64_t seed,
                                int threads = 1);

} // namespace hoplink::sim
