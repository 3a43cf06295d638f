#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hoplink/numerics.hpp"

#include <cmath>

using hoplink::numerics::bisect;
using hoplink::numerics::lambert_w0;
using hoplink::numerics::positive_cubic_root;
using hoplink::numerics::RootBracket;

namespace {

// Independent oracle: Newton steps on w e^w = x, written in the damped
// fixed-point form w <- (w^2 + x e^{-w}) / (1 + w), run to convergence.
double lambert_fixed_point(double x) {
    double w = x > 1.0 ? std::log(x) : x / (1.0 + x);
    for (int i = 0; i < 400; ++i) {
        const double next = (w * w + x * std::exp(-w)) / (1.0 + w);
        if (std::abs(next - w) < 1e-16 * std::max(1.0, std::abs(next))) return next;
        w = next;
    }
    return w;
}

} // namespace

TEST_CASE("lambert_w0 anchor values") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-13));
    CHECK(lambert_w0(1.0) == doctest::Approx(lambert_fixed_point(1.0)).epsilon(1e-12));
}

TEST_CASE("lambert_w0 residual and monotonicity across a log grid") {
    double prev = -2.0;
    for (int i = 0; i <= 320; ++i) {
        const double x = std::pow(10.0, -8.0 + 16.0 * i / 320.0);
        const double w = lambert_w0(x);
        const double residual = std::abs(w * std::exp(w) - x);
        CHECK(residual <= 1e-12 * std::max(1.0, x));
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("lambert_w0 near the branch point and domain error") {
    const double e = std::exp(1.0);
    CHECK(lambert_w0(-1.0 / e) == doctest::Approx(-1.0).epsilon(1e-6));
    const double x = -0.367;
    const double w = lambert_w0(x);
    CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-12));
    CHECK(w >= -1.0);
    CHECK_THROWS_AS((void)lambert_w0(-0.3680), std::domain_error);
}

TEST_CASE("lambert_w0 negative small arguments") {
    for (double x : {-0.3, -0.1, -0.01, -1e-5}) {
        const double w = lambert_w0(x);
        CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("bisect solves simple roots") {
    CHECK(bisect([](double x) { return x - 2.0; }, {.lo = 0.0, .hi = 5.0, .tol = 1e-12}) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(bisect([](double x) { return x * x * x - 1.0; },
                 {.lo = 0.0, .hi = 2.0, .tol = 1e-12}) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(bisect([](double x) { return std::exp(x) - 3.0; },
                 {.lo = 0.0, .hi = 2.0, .tol = 1e-13}) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("bisect rejects a non-bracketing interval") {
    CHECK_THROWS_AS((void)bisect([](double x) { return x + 10.0; },
                                 RootBracket{.lo = 0.0, .hi = 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)bisect([](double x) { return x; },
                                 RootBracket{.lo = 2.0, .hi = 1.0}),
                    std::invalid_argument);
}

TEST_CASE("bisect reports iteration exhaustion") {
    // Zero tolerance can never be met away from an exact hit.
    CHECK_THROWS_AS((void)bisect([](double x) { return x - 0.1234; },
                                 RootBracket{.lo = -1.0, .hi = 2.0, .tol = 0.0,
                                             .max_iter = 50}),
                    std::runtime_error);
}

TEST_CASE("positive_cubic_root single-term cases") {
    CHECK(positive_cubic_root(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(positive_cubic_root(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("positive_cubic_root matches a bisection oracle") {
    const double oracle = bisect([](double p) { return p * p * p + p * p - 1.0; },
                                 {.lo = 0.0, .hi = 1.0, .tol = 1e-14, .max_iter = 400});
    CHECK(positive_cubic_root(1.0, 1.0) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(positive_cubic_root(1.0, 1.0) ==
          doctest::Approx(0.7548776662466927).epsilon(1e-12));
}

TEST_CASE("positive_cubic_root residual over random coefficients") {
    std::uint64_t state = 12345;
    auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < 500; ++i) {
        const double a2 = std::pow(10.0, -8.0 + 16.0 * next());
        const double a3 = std::pow(10.0, -8.0 + 16.0 * next());
        const double p = positive_cubic_root(a2, a3);
        CHECK(std::abs(a3 * p * p * p + a2 * p * p - 1.0) <= 1e-10);
    }
}

TEST_CASE("positive_cubic_root rejects degenerate input") {
    CHECK_THROWS_AS((void)positive_cubic_root(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)positive_cubic_root(-1.0, 1.0), std::invalid_argument);
}
