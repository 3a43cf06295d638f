#include "hoplink/sim.hpp"

#include "hoplink/parallel.hpp"
#include "hoplink/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hoplink::sim {

namespace {

constexpr std::uint64_t kStreamConnection = 0x636f6e6eULL;
constexpr std::uint64_t kStreamSecrecy = 0x7365637265ULL;
constexpr std::uint64_t kStreamWardenH0 = 0x77647230ULL;
constexpr std::uint64_t kStreamWardenH1 = 0x77647231ULL;

double binomial_half_width(double p_hat, std::int64_t n) {
    return 1.96 * std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / static_cast<double>(n));
}

Estimate count_to_estimate(std::int64_t hits, std::int64_t trials, std::uint64_t seed) {
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, trials, binomial_half_width(p, trials), seed};
}

void check_powers(std::span<const double> powers, const Scenario& sc) {
    if (static_cast<int>(powers.size()) != sc.hops)
        throw std::invalid_argument("sim: powers size must equal scenario hops");
    for (double p : powers)
        if (!(p > 0.0)) throw std::invalid_argument("sim: powers must be positive");
}

} // namespace

Estimate mc_connection(const Scenario& sc, std::span<const double> powers,
                       double rate_tx, std::int64_t trials, std::uint64_t seed,
                       int threads) {
    sc.validate();
    check_powers(powers, sc);
    if (trials < 1) throw std::invalid_argument("mc_connection: trials must be >= 1");

    const double gamma_c = std::exp2(rate_tx) - 1.0;
    const double k = gamma_c * std::pow(sc.hop_distance(), sc.path_loss_terrestrial) *
                     sc.noise_normalized;
    std::vector<double> threshold(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) threshold[i] = k / powers[i];

    std::atomic<std::int64_t> hits{0};
    parallel_chunks(trials, threads, [&](std::int64_t lo, std::int64_t hi) {
        std::int64_t local = 0;
        for (std::int64_t t = lo; t < hi; ++t) {
            rng::TrialStream g(seed, kStreamConnection, static_cast<std::uint64_t>(t));
            bool ok = true;
            for (double thr : threshold) {
                if (!(g.next_exponential() > thr)) { ok = false; break; }
            }
            local += ok;
        }
        hits.fetch_add(local, std::memory_order_relaxed);
    });
    return count_to_estimate(hits.load(), trials, seed);
}

Estimate mc_secrecy_outage(const Scenario& sc, std::span<const double> powers,
                           double rate_redundancy, std::int64_t trials,
                           std::uint64_t seed, int threads) {
    sc.validate();
    check_powers(powers, sc);
    if (trials < 1) throw std::invalid_argument("mc_secrecy_outage: trials must be >= 1");

    const double gamma_e = std::exp2(rate_redundancy) - 1.0;
    const auto channels = hop_channels(sc);
    // Fading-power thresholds per hop for each large-scale state.
    std::vector<double> thr_los(channels.size()), thr_nlos(channels.size()),
        p_los(channels.size());
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const double d = channels[i].dist_uav;
        thr_los[i] = gamma_e * std::pow(d, sc.path_loss_los) * sc.noise_normalized / powers[i];
        thr_nlos[i] = gamma_e * std::pow(d, sc.path_loss_nlos) * sc.noise_normalized /
                      (sc.excess_nlos * powers[i]);
        p_los[i] = channels[i].p_los;
    }

    std::atomic<std::int64_t> outages{0};
    parallel_chunks(trials, threads, [&](std::int64_t lo, std::int64_t hi) {
        std::int64_t local = 0;
        for (std::int64_t t = lo; t < hi; ++t) {
            rng::TrialStream g(seed, kStreamSecrecy, static_cast<std::uint64_t>(t));
            bool leaked = false;
            for (std::size_t i = 0; i < thr_los.size(); ++i) {
                const bool los = g.next_bernoulli(p_los[i]);
                const double gain = g.next_exponential();
                if (gain > (los ? thr_los[i] : thr_nlos[i])) leaked = true;
            }
            local += leaked;
        }
        outages.fetch_add(local, std::memory_order_relaxed);
    });
    return count_to_estimate(outages.load(), trials, seed);
}

namespace {

double log_sum_exp(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Received-power mixture in noise-normalized units:
// w * Exp(mean m1) + (1 - w) * Exp(mean m2), against unit-mean noise.
struct PowerMixture {
    double w, m1, m2;

    // ln(f1(r) / f0(r)); the r-proportional parts are combined analytically
    // so small mixtures do not cancel against the noise exponent.
    double log_ratio(double r) const {
        const double a = std::log(w) - std::log(m1) + r * (m1 - 1.0) / m1;
        if (w == 1.0) return a;
        const double b = std::log1p(-w) - std::log(m2) + r * (m2 - 1.0) / m2;
        return log_sum_exp(a, b);
    }

    // Integrand of the divergence: f1(r) * ln(f1(r)/f0(r)).
    double kl_integrand(double r) const {
        const double lr = log_ratio(r);
        return std::exp(lr - r) * lr;
    }
};

double adaptive_simpson(const PowerMixture& mix, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = mix.kl_integrand(lm);
    const double frm = mix.kl_integrand(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(mix, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(mix, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_kl(const PowerMixture& mix, double r_max, double rel_tol) {
    // First pass on a coarse split to build an absolute tolerance.
    const int segments = 32;
    double rough = 0.0;
    for (int s = 0; s < segments; ++s) {
        const double a = r_max * s / segments;
        const double b = r_max * (s + 1) / segments;
        const double m = 0.5 * (a + b);
        rough += (b - a) / 6.0 *
                 (mix.kl_integrand(a) + 4.0 * mix.kl_integrand(m) + mix.kl_integrand(b));
    }
    const double tol = std::max(std::abs(rough), 1e-30) * rel_tol;
    double total = 0.0;
    for (int s = 0; s < segments; ++s) {
        const double a = r_max * s / segments;
        const double b = r_max * (s + 1) / segments;
        const double m = 0.5 * (a + b);
        const double fa = mix.kl_integrand(a);
        const double fm = mix.kl_integrand(m);
        const double fb = mix.kl_integrand(b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(mix, a, b, fa, fm, fb, whole, tol / segments, 48);
    }
    return total;
}

PowerMixture observation_mixture(const Scenario& sc, double power, int hop) {
    const double d = uav_distance(sc, hop);
    const double theta = elevation_angle_deg(sc.uav_height, d);
    const double w = los_probability(theta, sc.env_b, sc.env_c);
    const double sigma2 = sc.noise_normalized;
    const double m_los = 1.0 + power * std::pow(d, -sc.path_loss_los) / sigma2;
    const double m_nlos = 1.0 + sc.excess_nlos * power * std::pow(d, -sc.path_loss_nlos) / sigma2;
    return {w, m_los, m_nlos};
}

} // namespace

double true_kl_per_hop(const Scenario& sc, double power, int hop, double rel_tol) {
    sc.validate();
    if (power < 0.0) throw std::invalid_argument("true_kl_per_hop: power must be >= 0");
    if (power == 0.0) return 0.0;
    const PowerMixture mix = observation_mixture(sc, power, hop);
    // Both densities' tails beyond r_max carry mass below 1e-14.
    const double r_max = 33.0 * std::max({1.0, mix.m1, mix.m2});
    return sc.codeword_length * integrate_kl(mix, r_max, rel_tol);
}

Estimate warden_detection_error(const Scenario& sc, std::span<const double> powers,
                                std::int64_t trials, std::uint64_t seed, int threads) {
    sc.validate();
    if (static_cast<int>(powers.size()) != sc.hops)
        throw std::invalid_argument("sim: powers size must equal scenario hops");
    for (double p : powers)
        if (p < 0.0) throw std::invalid_argument("sim: powers must be >= 0");
    if (trials < 2) throw std::invalid_argument("warden_detection_error: trials must be >= 2");

    const std::int64_t n0 = trials / 2;
    const std::int64_t n1 = trials - n0;
    const int hops = sc.hops;
    const int block = sc.codeword_length;

    std::vector<PowerMixture> mix;
    mix.reserve(static_cast<std::size_t>(hops));
    for (int n = 1; n <= hops; ++n)
        mix.push_back(observation_mixture(sc, powers[static_cast<std::size_t>(n - 1)], n));

    // Block log-likelihood ratio for one hop given the summed received power:
    // the LoS state is common to the block, the fading is marginalized per
    // sample into the Gaussian, so sum_l r_l is sufficient.
    auto hop_llr = [&](const PowerMixture& mx, double r_sum) {
        const double a =
            std::log(mx.w) - block * std::log(mx.m1) + r_sum * (mx.m1 - 1.0) / mx.m1;
        const double b =
            std::log1p(-mx.w) - block * std::log(mx.m2) + r_sum * (mx.m2 - 1.0) / mx.m2;
        return log_sum_exp(a, b);
    };

    std::vector<double> llr0(static_cast<std::size_t>(n0));
    std::vector<double> llr1(static_cast<std::size_t>(n1));

    parallel_chunks(n0, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t t = lo; t < hi; ++t) {
            rng::TrialStream g(seed, kStreamWardenH0, static_cast<std::uint64_t>(t));
            double total = 0.0;
            for (int n = 0; n < hops; ++n) {
                double r_sum = 0.0;
                for (int l = 0; l < block; ++l) r_sum += g.next_exponential();
                total += hop_llr(mix[static_cast<std::size_t>(n)], r_sum);
            }
            llr0[static_cast<std::size_t>(t)] = total;
        }
    });
    parallel_chunks(n1, threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t t = lo; t < hi; ++t) {
            rng::TrialStream g(seed, kStreamWardenH1, static_cast<std::uint64_t>(t));
            double total = 0.0;
            for (int n = 0; n < hops; ++n) {
                const PowerMixture& mx = mix[static_cast<std::size_t>(n)];
                const double mean = g.next_bernoulli(mx.w) ? mx.m1 : mx.m2;
                double r_sum = 0.0;
                for (int l = 0; l < block; ++l) r_sum += g.next_exponential(mean);
                total += hop_llr(mx, r_sum);
            }
            llr1[static_cast<std::size_t>(t)] = total;
        }
    });

    std::sort(llr0.begin(), llr0.end());
    std::sort(llr1.begin(), llr1.end());

    // Sweep the decision threshold over the pooled observed values; the test
    // declares transmission when LLR > tau. Scanning the pooled sorted values
    // visits every distinct empirical operating point.
    std::vector<double> pooled;
    pooled.reserve(llr0.size() + llr1.size());
    pooled.insert(pooled.end(), llr0.begin(), llr0.end());
    pooled.insert(pooled.end(), llr1.begin(), llr1.end());
    std::sort(pooled.begin(), pooled.end());
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

    double best = 1.0;  // tau = +inf: always declare noise -> P_FA 0, P_MD 1
    double best_pfa = 0.0, best_pmd = 1.0;
    for (double tau : pooled) {
        const auto above0 = llr0.end() - std::upper_bound(llr0.begin(), llr0.end(), tau);
        const auto at_most1 = std::upper_bound(llr1.begin(), llr1.end(), tau) - llr1.begin();
        const double pfa = static_cast<double>(above0) / static_cast<double>(n0);
        const double pmd = static_cast<double>(at_most1) / static_cast<double>(n1);
        if (pfa + pmd < best) {
            best = pfa + pmd;
            best_pfa = pfa;
            best_pmd = pmd;
        }
    }

    Estimate e;
    e.value = best;
    e.trials = trials;
    e.seed = seed;
    e.half_width_95 = 1.96 * std::sqrt(best_pfa * (1.0 - best_pfa) / static_cast<double>(n0) +
                                       best_pmd * (1.0 - best_pmd) / static_cast<double>(n1));
    return e;
}

} // namespace hoplink::sim
