#include "hoplink/numerics.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

namespace hoplink::numerics {

namespace {

// One Halley step for f(w) = w*e^w - x.
double halley_step(double w, double x) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    return w - f / denom;
}

} // namespace

double lambert_w0(double x) {
    constexpr double neg_inv_e = -0.36787944117144233;
    if (std::isnan(x) || x < neg_inv_e * (1.0 + 4.0 * DBL_EPSILON))
        throw std::domain_error("lambert_w0: argument below -1/e");
    if (x == 0.0) return 0.0;

    // Small arguments: series w = x - x^2 + 3/2 x^3 - 8/3 x^4.
    if (std::abs(x) < 1e-4)
        return x * (1.0 + x * (-1.0 + x * (1.5 - x * (8.0 / 3.0))));

    if (x > 1e10) {
        // Solve w + ln w = ln x in log space; avoids exp overflow for huge x.
        const double lx = std::log(x);
        double w = lx - std::log(lx);
        for (int it = 0; it < 40; ++it) {
            const double g = w + std::log(w) - lx;
            const double step = g / (1.0 + 1.0 / w);
            w -= step;
            if (std::abs(step) <= 1e-15 * w) break;
        }
        return w;
    }

    double w;
    if (x < -0.34) {
        // Near the branch point: expansion in p = sqrt(2(e*x + 1)).
        const double p = std::sqrt(2.0 * std::max(0.0, std::exp(1.0) * x + 1.0));
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    } else if (x <= std::exp(1.0)) {
        w = std::log1p(x);
    } else {
        const double lx = std::log(x);
        w = lx - std::log(lx);
    }

    for (int it = 0; it < 40; ++it) {
        const double next = halley_step(w, x);
        if (!std::isfinite(next)) break;
        const double diff = std::abs(next - w);
        w = next;
        if (diff <= 1e-14 * std::max(1.0, std::abs(w))) break;
    }
    return w;
}

double positive_cubic_root(double a2, double a3) {
    if (a2 < 0.0 || a3 < 0.0 || (a2 == 0.0 && a3 == 0.0))
        throw std::invalid_argument("positive_cubic_root: need a2, a3 >= 0 and a2 + a3 > 0");

    // Each single-term root bounds the combined root from above.
    double hi = std::numeric_limits<double>::infinity();
    if (a3 > 0.0) hi = std::min(hi, std::cbrt(1.0 / a3));
    if (a2 > 0.0) hi = std::min(hi, std::sqrt(1.0 / a2));

    auto g = [&](double p) { return (a3 * p + a2) * p * p - 1.0; };
    double lo = 0.0;
    double p = hi;
    // Safeguarded Newton: g is strictly increasing and convex on p > 0.
    for (int it = 0; it < 100; ++it) {
        const double gp = g(p);
        if (gp > 0.0) hi = p; else lo = p;
        const double dg = (3.0 * a3 * p + 2.0 * a2) * p;
        double next = p - gp / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - p) <= 1e-15 * std::max(1.0, p) && std::abs(gp) <= 1e-12)
            return next;
        p = next;
    }
    return p;
}

} // namespace hoplink::numerics
