#include "hoplink/secrecy.hpp"

#include "hoplink/errors.hpp"
#include "hoplink/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hoplink::secrecy {

void Constraints::validate() const {
    if (!(zeta > 0.0) || !(zeta < 1.0))
        throw std::invalid_argument("secrecy: zeta must lie in (0, 1)");
    if (!(power_total > 0.0))
        throw std::invalid_argument("secrecy: power_total must be positive");
}

Allocation allocate_power(std::span<const HopChannel> channels, const Constraints& cs) {
    cs.validate();
    if (channels.empty())
        throw std::invalid_argument("secrecy: need at least one hop");

    double inv_b_sum = 0.0;
    for (const auto& h : channels) inv_b_sum += 1.0 / h.secrecy_coeff;

    Allocation al;
    al.t.reserve(channels.size());
    double inv_t_sum = 0.0;
    for (const auto& h : channels) {
        // b_n * sum_k 1/b_k >= 1 > zeta, so the log argument exceeds 1.
        const double tn = std::log(h.secrecy_coeff * inv_b_sum / cs.zeta) / h.secrecy_coeff;
        if (!(tn > 0.0) || !std::isfinite(tn))
            throw InfeasibleError("secrecy: outage budget infeasible for this geometry");
        al.t.push_back(tn);
        inv_t_sum += 1.0 / tn;
    }
    al.gamma_e = cs.power_total / inv_t_sum;
    al.powers.reserve(channels.size());
    for (double tn : al.t) al.powers.push_back(al.gamma_e / tn);
    return al;
}

double optimal_secrecy_rate(double gamma_e, double a1) {
    if (!(gamma_e > 0.0) || !(a1 > 0.0))
        throw std::invalid_argument("optimal_secrecy_rate: inputs must be positive");
    return numerics::lambert_w0(gamma_e / (a1 * (gamma_e + 1.0))) / std::numbers::ln2;
}

namespace {

// Fills rates, connection probability and throughput for a fixed allocation.
// a1 is chosen so the connection exponent is ((gamma_e+1) 2^Rs - 1) * a1 / gamma_e.
Solution finish(const Scenario& sc, std::span<const HopChannel> channels,
                std::vector<double> powers, double gamma_e, double a1) {
    Solution s;
    s.hops = static_cast<int>(channels.size());
    s.powers = std::move(powers);
    s.gamma_e = gamma_e;
    s.a1 = a1;
    s.rate_secret = optimal_secrecy_rate(gamma_e, a1);
    s.rate_redundancy = std::log2(gamma_e + 1.0);
    s.rate_tx = s.rate_redundancy + s.rate_secret;
    const double gamma_c = (gamma_e + 1.0) * std::exp2(s.rate_secret) - 1.0;
    s.p_connect = connection_probability(s.powers, gamma_c, sc);
    s.p_secrecy_outage = secrecy_outage_probability(s.powers, gamma_e, channels);
    s.throughput = s.p_connect * s.rate_secret / s.hops;
    return s;
}

} // namespace

Solution evaluate(const Scenario& sc, std::span<const HopChannel> channels,
                  const Constraints& cs) {
    Allocation al = allocate_power(channels, cs);
    const double k = std::pow(sc.hop_distance(), sc.path_loss_terrestrial) *
                     sc.noise_normalized;
    double t_sum = 0.0;
    for (double tn : al.t) t_sum += tn;
    const double a1 = k * t_sum;
    return finish(sc, channels, std::move(al.powers), al.gamma_e, a1);
}

Solution evaluate_equal_power(const Scenario& sc, std::span<const HopChannel> channels,
                              const Constraints& cs) {
    cs.validate();
    if (channels.empty())
        throw std::invalid_argument("secrecy: need at least one hop");
    const double p = cs.power_total / static_cast<double>(channels.size());

    // Largest gamma_e meeting the summed outage budget at equal power.
    auto outage_sum = [&](double ge) {
        double s = 0.0;
        for (const auto& h : channels) s += std::exp(-ge * h.secrecy_coeff / p);
        return s - cs.zeta;
    };
    double hi = 1.0;
    int grow = 0;
    while (outage_sum(hi) > 0.0) {
        hi *= 4.0;
        if (++grow > 600)
            throw std::runtime_error("secrecy: equal-power threshold search failed to bracket");
    }
    const double gamma_e =
        numerics::bisect(outage_sum, {.lo = 0.0, .hi = hi, .tol = 1e-14, .max_iter = 400});
    if (!(gamma_e > 0.0))
        throw InfeasibleError("secrecy: outage budget infeasible at equal power");

    const double k = std::pow(sc.hop_distance(), sc.path_loss_terrestrial) *
                     sc.noise_normalized;
    const double a1 = gamma_e * static_cast<double>(channels.size()) * k / p;
    std::vector<double> powers(channels.size(), p);
    return finish(sc, channels, std::move(powers), gamma_e, a1);
}

HopSearch search_hops(Scenario sc, const Constraints& cs, int max_hops) {
    if (max_hops < 1)
        throw std::invalid_argument("secrecy: max_hops must be >= 1");
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

} // namespace hoplink::secrecy
