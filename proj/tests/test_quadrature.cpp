#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "holo/numerics.hpp"
#include "holo/quadrature.hpp"

using namespace holo;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    // x^7 over [0, 1] with a 4-point rule
    const double got = integrate_fixed([](double x) { return x * x * x * x * x * x * x; }, 0.0, 1.0, 4);
    CHECK(got == Catch::Approx(1.0 / 8.0).epsilon(1e-14));

    const double s = integrate_fixed([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 64);
    CHECK(s == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("adaptive doubling meets the requested tolerance") {
    QuadratureSpec spec;
    spec.node_count = 16;
    spec.rel_tol = 1e-12;
    const double got = integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0, spec);
    CHECK(got == Catch::Approx(0.8862073482595212).epsilon(1e-12));  // sqrt(pi)/2 erf(3)
}

TEST_CASE("endpoint-singular integrands without a substitution do not converge") {
    QuadratureSpec spec;
    spec.node_count = 16;
    spec.rel_tol = 1e-12;
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec),
                    NumericsError);
}

TEST_CASE("degenerate and inverted ranges") {
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 2.0, 1.0), DomainError);
}

TEST_CASE("bisection and Brent agree on a smooth root") {
    auto f = [](double x) { return std::cos(x) - x; };
    const double a = bisect(f, 0.0, 1.0, 1e-14);
    const double b = brent_root(f, 0.0, 1.0, 1e-14);
    CHECK(a == Catch::Approx(0.7390851332151607).epsilon(1e-12));
    CHECK(b == Catch::Approx(0.7390851332151607).epsilon(1e-12));
    CHECK_THROWS_AS(bisect(f, 2.0, 3.0, 1e-14), BracketError);
    CHECK_THROWS_AS(brent_root(f, 2.0, 3.0, 1e-14), BracketError);
}

TEST_CASE("golden section finds an interior minimum") {
    auto f = [](double x) { return (x - 0.3) * (x - 0.3) + 1.0; };
    CHECK(golden_min(f, 0.0, 1.0, 1e-12) == Catch::Approx(0.3).margin(1e-10));
}
