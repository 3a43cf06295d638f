#include "hoplink/covert.hpp"

#include "hoplink/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hoplink::covert {

void Constraints::validate() const {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("covert: epsilon must lie in (0, 1)");
    if (!(power_total > 0.0))
        throw std::invalid_argument("covert: power_total must be positive");
}

double kl_bound(std::span<const double> powers, std::span<const HopChannel> channels) {
    if (powers.size() != channels.size())
        throw std::invalid_argument("kl_bound: powers/channels size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (powers[i] < 0.0)
            throw std::invalid_argument("kl_bound: powers must be nonnegative");
        s += channels[i].covert_coeff * powers[i] * powers[i];
    }
    return s;
}

namespace {

// Power vector for given multipliers: p_n solves 2 lambda c_n p^3 + mu p^2 = 1.
std::vector<double> powers_for(std::span<const HopChannel> channels, double lambda,
                               double mu) {
    std::vector<double> p;
    p.reserve(channels.size());
    for (const auto& h : channels)
        p.push_back(numerics::positive_cubic_root(mu, 2.0 * lambda * h.covert_coeff));
    return p;
}

double divergence_at(std::span<const HopChannel> channels, std::span<const double> p) {
    double s = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i)
        s += channels[i].covert_coeff * p[i] * p[i];
    return s;
}

double sum_of(std::span<const double> p) {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

// Width-only bisection for the decreasing multiplier maps below; runs until
// the bracket is at floating-point resolution.
template <class F>
double bisect_to_ulp(F&& decreasing, double lo, double hi) {
    for (int it = 0; it < 140; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (decreasing(mid) > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Multiplier of the divergence constraint that makes it active for a fixed mu;
// zero when the constraint is already slack at lambda = 0.
double lambda_active(std::span<const HopChannel> channels, double mu, double budget) {
    auto excess = [&](double lambda) {
        return divergence_at(channels, powers_for(channels, lambda, mu)) - budget;
    };
    if (excess(0.0) <= 0.0) return 0.0;
    double hi = 1.0;
    int grow = 0;
    while (excess(hi) > 0.0) {
        hi *= 8.0;
        if (++grow > 400)
            throw std::runtime_error("covert: failed to bracket lambda");
    }
    return bisect_to_ulp(excess, 0.0, hi);
}

} // namespace

Allocation allocate_power(std::span<const HopChannel> channels, const Constraints& cs) {
    cs.validate();
    if (channels.empty())
        throw std::invalid_argument("covert: need at least one hop");
    const double budget = 2.0 * cs.epsilon * cs.epsilon;
    const double n = static_cast<double>(channels.size());

    // Case 1: divergence constraint active alone. The stationarity equation
    // gives p_n = (2 lambda c_n)^(-1/3), and the active constraint pins lambda.
    {
        double c13 = 0.0;
        for (const auto& h : channels) c13 += std::cbrt(h.covert_coeff);
        const double lambda = 0.5 * std::pow(c13 / budget, 1.5);
        Allocation al{powers_for(channels, lambda, 0.0), lambda, 0.0};
        if (sum_of(al.powers) <= cs.power_total) return al;
    }

    // Case 2: power constraint active alone; stationarity forces equal powers.
    {
        const double p = cs.power_total / n;
        std::vector<double> powers(channels.size(), p);
        if (divergence_at(channels, powers) <= budget)
            return {std::move(powers), 0.0, 1.0 / (p * p)};
    }

    // Case 3: both active. Outer bisection on mu; the inner solve keeps the
    // divergence constraint active. At mu = 0 the case-1 powers oversubscribe
    // P_T, and powers vanish as mu grows, so the sum crosses P_T in between.
    auto power_excess = [&](double mu) {
        const double lambda = lambda_active(channels, mu, budget);
        return sum_of(powers_for(channels, lambda, mu)) - cs.power_total;
    };
    double hi = n * n / (cs.power_total * cs.power_total);
    int grow = 0;
    while (power_excess(hi) > 0.0) {
        hi *= 8.0;
        if (++grow > 400)
            throw std::runtime_error("covert: failed to bracket mu");
    }
    const double mu = bisect_to_ulp(power_excess, 0.0, hi);
    const double lambda = lambda_active(channels, mu, budget);
    return {powers_for(channels, lambda, mu), lambda, mu};
}

double optimal_rate(double a2) {
    if (!(a2 > 0.0))
        throw std::invalid_argument("optimal_rate: a2 must be positive");
    return numerics::lambert_w0(1.0 / a2) / std::numbers::ln2;
}

namespace {

Solution finish(const Scenario& sc, std::span<const HopChannel> channels,
                Allocation al) {
    Solution s;
    s.hops = static_cast<int>(channels.size());
    s.lambda_kl = al.lambda_kl;
    s.mu_pow = al.mu_pow;
    s.kl_bound = kl_bound(al.powers, channels);
    const double k = std::pow(sc.hop_distance(), sc.path_loss_terrestrial) *
                     sc.noise_normalized;
    s.a2 = 0.0;
    for (double p : al.powers) s.a2 += k / p;
    s.powers = std::move(al.powers);
    s.rate_tx = optimal_rate(s.a2);
    s.p_connect = connection_probability(s.powers, std::exp2(s.rate_tx) - 1.0, sc);
    s.throughput = s.p_connect * s.rate_tx / s.hops;
    return s;
}

} // namespace

Solution evaluate(const Scenario& sc, std::span<const HopChannel> channels,
                  const Constraints& cs) {
    return finish(sc, channels, allocate_power(channels, cs));
}

Solution evaluate_equal_power(const Scenario& sc, std::span<const HopChannel> channels,
                              const Constraints& cs) {
    cs.validate();
    if (channels.empty())
        throw std::invalid_argument("covert: need at least one hop");
    double c_sum = 0.0;
    for (const auto& h : channels) c_sum += h.covert_coeff;
    const double p = std::min(cs.power_total / static_cast<double>(channels.size()),
                              std::sqrt(2.0 * cs.epsilon * cs.epsilon / c_sum));
    Allocation al;
    al.powers.assign(channels.size(), p);
    return finish(sc, channels, std::move(al));
}

HopSearch search_hops(Scenario sc, const Constraints& cs, int max_hops) {
    if (max_hops < 1)
        throw std::invalid_argument("covert: max_hops must be >= 1");
    HopSearch out;
    out.evaluated.reserve(static_cast<std::size_t>(max_hops));
    for (int n = 1; n <= max_hops; ++n) {
        sc.hops = n;
        const auto channels = hop_channels(sc);
        out.evaluated.push_back(evaluate(sc, channels, cs));
        if (out.best_hops == 0 || out.evaluated.back().throughput > out.best.throughput) {
            out.best_hops = n;
            out.best = out.evaluated.back();
        }
    }
    return out;
}

} // namespace hoplink::covert
