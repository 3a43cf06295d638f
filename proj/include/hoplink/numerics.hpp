#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hoplink::numerics {

/// Principal branch of the Lambert W function, W0(x) for x >= -1/e.
/// Solves w*exp(w) = x with w >= -1; relative residual <= 1e-12.
double lambert_w0(double x);

struct RootBracket {
    double lo = 0.0;
    double hi = 0.0;
    double tol = 1e-10;
    int max_iter = 200;
};

/// Bisection on a continuous function that changes sign over [lo, hi].
/// Stops when |f(mid)| <= tol or the interval width drops below tol.
template <class F>
double bisect(F&& f, RootBracket bracket) {
    if (!(bracket.lo < bracket.hi))
        throw std::invalid_argument("bisect: lo must be less than hi");
    double flo = f(bracket.lo);
    double fhi = f(bracket.hi);
    if (flo == 0.0) return bracket.lo;
    if (fhi == 0.0) return bracket.hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument("bisect: interval does not bracket a root");
    double lo = bracket.lo, hi = bracket.hi;
    for (int it = 0; it < bracket.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= bracket.tol || (hi - lo) <= bracket.tol)
            return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw std::runtime_error("bisect: max_iter exceeded");
}

/// Unique positive root of a3*p^3 + a2*p^2 = 1 (a2, a3 >= 0, not both zero).
/// The left side is strictly increasing on p > 0, so the root exists and is unique.
double positive_cubic_root(double a2, double a3);

} // namespace hoplink::numerics
