#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hslab/grid.hpp"
#include "hslab/interpolation.hpp"
#include "hslab/quadrature.hpp"

using namespace hslab;

TEST_CASE("uniform grid basics") {
    SpatialGrid g(12.0, 1024);
    REQUIRE(g.nodes.front() == -12.0);
    REQUIRE(g.nodes.back() == 12.0);
    const double h = g.spacing();
    for (std::size_t i = 0; i + 1 < g.node_count; ++i)
        REQUIRE(std::abs(g.nodes[i + 1] - g.nodes[i] - h) < 1e-12);
    REQUIRE_THROWS_AS(SpatialGrid(12.0, 100), ConfigError);
    REQUIRE_THROWS_AS(SpatialGrid(-1.0, 1024), ConfigError);
}

TEST_CASE("adaptive quadrature on known integrals") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    const double v = integrate_adaptive(gauss, -20.0, 20.0, 1e-12);
    REQUIRE(std::abs(v - std::sqrt(std::numbers::pi)) < 1e-11);

    auto osc = [](double x) { return std::cos(10.0 * x); };
    const double w = integrate_adaptive(osc, 0.0, 2.0, 1e-12);
    REQUIRE(std::abs(w - std::sin(20.0) / 10.0) < 1e-11);

    const double s = integrate_simpson(gauss, -20.0, 20.0, 1e-11);
    REQUIRE(std::abs(s - std::sqrt(std::numbers::pi)) < 1e-9);
}

TEST_CASE("cumulative integral is 4th order") {
    auto run = [](std::size_t n) {
        SpatialGrid g(6.0, n);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::exp(-g.nodes[i] * g.nodes[i]);
        const auto F = cumulative_from_right(f, g.spacing());
        // compare at x = 0.3 (off the end nodes) against erf
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.nodes[i];
            const double exact = 0.5 * std::sqrt(std::numbers::pi) * (std::erf(6.0) - std::erf(x));
            worst = std::max(worst, std::abs(F[i] - exact));
        }
        return worst;
    };
    const double e1 = run(512), e2 = run(1024);
    REQUIRE(e1 < 5e-8);
    const double order = std::log2(e1 / e2);
    REQUIRE(order > 3.5);
}

TEST_CASE("not-a-knot spline accuracy incl. end nodes") {
    const std::size_t n = 200;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = -2.0 + 4.0 * static_cast<double>(i) / (n - 1);
        y[i] = std::sin(2.0 * x[i]);
    }
    CubicSpline s(x, y);
    double worst = 0.0;
    for (double q = -2.0; q <= 2.0; q += 0.0137)
        worst = std::max(worst, std::abs(s(q) - std::sin(2.0 * q)));
    REQUIRE(worst < 2e-7);
    REQUIRE(std::abs(s.derivative(1.0) - 2.0 * std::cos(2.0)) < 1e-5);
}

TEST_CASE("monotone interpolant preserves monotonicity and inverts") {
    const std::size_t n = 100;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i) * 0.1;
        y[i] = x[i] + 0.3 * std::tanh(x[i] - 5.0);
    }
    MonotoneInterpolant fwd(x, y), inv(y, x);
    for (double q = 0.0; q <= 9.9; q += 0.037) {
        const double yy = fwd(q);
        REQUIRE(std::abs(inv(yy) - q) < 1e-4);
    }
    for (double q = 0.05; q <= 9.8; q += 0.1)
        REQUIRE(fwd(q + 0.05) > fwd(q));
}
