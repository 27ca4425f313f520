#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hslab/coordinate_map.hpp"
#include "hslab/profile.hpp"
#include "oracles.hpp"

using namespace hslab;

TEST_CASE("zero profile passes all checks") {
    auto p = build_profile(ProfileSpec::zero(12.0, 1024));
    for (double v : p.u0) REQUIRE(v == 0.0);
    for (double v : p.m0) REQUIRE(v == 0.0);
    REQUIRE(p.min_m_plus_1 == 1.0);
}

TEST_CASE("gaussian closed-form second derivative") {
    auto p = build_profile(ProfileSpec::gaussian(0.1, 1.0, 0.0, 12.0, 1024));
    REQUIRE(std::abs(p.eval_m(0.0) - 0.2) < 1e-15);
    for (double x : {-2.0, -0.3, 0.7, 1.9}) {
        REQUIRE(std::abs(p.eval_m(x) - oracles::gaussian_m(0.1, 1.0, 0.0, x)) < 1e-14);
        REQUIRE(std::abs(p.eval_m_x(x) - oracles::gaussian_m_x(0.1, 1.0, 0.0, x)) < 1e-14);
    }
}

TEST_CASE("hypothesis violation rejected for large amplitude") {
    // min of A(2-4x^2)e^{-x^2} is -4A e^{-3/2} at x^2 = 3/2; A = 2 drives m0+1 < 0
    REQUIRE_THROWS_AS(build_profile(ProfileSpec::gaussian(2.0, 1.0, 0.0, 12.0, 1024)),
                      HypothesisError);
}

TEST_CASE("derive_m spectral matches analytic derivatives") {
    SpatialGrid g(12.0, 1024);
    std::vector<double> u1(g.node_count), u2(g.node_count);
    for (std::size_t i = 0; i < g.node_count; ++i) {
        const double x = g.nodes[i];
        u1[i] = 0.1 * std::exp(-x * x);
        u2[i] = x * std::exp(-x * x);
    }
    const auto m1 = derive_m(u1, g);
    const auto m2 = derive_m(u2, g);
    double w1 = 0.0, w2 = 0.0;
    for (std::size_t i = 0; i < g.node_count; ++i) {
        const double x = g.nodes[i];
        w1 = std::max(w1, std::abs(m1[i] - oracles::gaussian_m(0.1, 1.0, 0.0, x)));
        w2 = std::max(w2, std::abs(m2[i] - (6.0 * x - 4.0 * x * x * x) * std::exp(-x * x)));
    }
    REQUIRE(w1 < 1e-8);
    REQUIRE(w2 < 1e-8);

    const auto z = derive_m(std::vector<double>(g.node_count, 0.0), g);
    for (double v : z) REQUIRE(v == 0.0);

    REQUIRE_THROWS_AS(derive_m(std::vector<double>(g.node_count, 1.0), g), HypothesisError);
}

TEST_CASE("omega scaling") {
    auto p = build_profile(ProfileSpec::gaussian(0.05, 1.0, 0.0, 12.0, 1024));

    auto same = scale_omega(p, 1.0);
    REQUIRE(same.u0 == p.u0);

    auto q = scale_omega(p, 2.0);
    REQUIRE(q.grid.half_width == 48.0);
    for (std::size_t i = 0; i < q.grid.node_count; i += 97) {
        const double xt = q.grid.nodes[i];
        REQUIRE(std::abs(q.u0[i] - 8.0 * 0.05 * std::exp(-xt * xt / 16.0)) < 1e-14);
    }

    auto back = scale_omega(q, 0.5);
    REQUIRE(back.grid.half_width == p.grid.half_width);
    for (std::size_t i = 0; i < p.grid.node_count; ++i) {
        REQUIRE(std::abs(back.u0[i] - p.u0[i]) < 1e-12);
        REQUIRE(std::abs(back.m0[i] - p.m0[i]) < 1e-12);
    }

    REQUIRE_THROWS_AS(scale_omega(p, 0.0), ConfigError);
    REQUIRE_THROWS_AS(scale_omega(p, -1.0), ConfigError);
}

TEST_CASE("coordinate map identity for m = 0") {
    auto p = build_profile(ProfileSpec::zero(12.0, 1024));
    auto cm = coordinate_map(p);
    for (std::size_t i = 0; i < p.grid.node_count; i += 31) {
        REQUIRE(std::abs(cm.y_of_x[i] - p.grid.nodes[i]) < 1e-14);
        REQUIRE(std::abs(cm.x_at(cm.y_of_x[i]) - p.grid.nodes[i]) < 1e-14);
    }
}

TEST_CASE("coordinate map against independent quadrature") {
    auto p = build_profile(ProfileSpec::gaussian(0.1, 1.0, 0.0, 12.0, 2048));
    auto cm = coordinate_map(p);

    const std::size_t i0 = p.grid.cell_of(0.0);
    const double x0 = p.grid.nodes[i0];
    const double oracle = x0 - integrate_simpson(
        [&](double x) { return std::sqrt(oracles::gaussian_m(0.1, 1.0, 0.0, x) + 1.0) - 1.0; },
        x0, 12.0, 1e-13);
    REQUIRE(std::abs(cm.y_of_x[i0] - oracle) < 1e-8);

    // dy/dx = sqrt(m+1) >= sqrt(eps0)
    const double h = p.grid.spacing();
    for (std::size_t i = 0; i + 1 < p.grid.node_count; ++i) {
        const double dy = cm.y_of_x[i + 1] - cm.y_of_x[i];
        REQUIRE(dy >= std::sqrt(p.epsilon0) * h * (1.0 - 1e-6));
    }
    // y(x) - x vanishes at the right end
    REQUIRE(std::abs(cm.y_of_x.back() - p.grid.nodes.back()) < 1e-12);

    // inverse composes to identity on interior nodes
    for (std::size_t i = 1; i + 1 < p.grid.node_count; i += 17)
        REQUIRE(std::abs(cm.x_at(cm.y_of_x[i]) - p.grid.nodes[i]) < 1e-9);
}

TEST_CASE("profile csv round trip and validation") {
    const char* path = "test_profile_tmp.csv";
    {
        SpatialGrid g(12.0, 512);
        std::ofstream out(path);
        out << "x,u0\n";
        out.precision(17);
        for (std::size_t i = 0; i < g.node_count; ++i)
            out << g.nodes[i] << "," << 0.05 * std::exp(-g.nodes[i] * g.nodes[i]) << "\n";
    }
    auto p = load_profile_csv(path);
    REQUIRE(p.derivative_method == "fd4");
    double worst = 0.0;
    for (std::size_t i = 0; i < p.grid.node_count; ++i)
        worst = std::max(worst, std::abs(p.m0[i] - oracles::gaussian_m(0.05, 1.0, 0.0, p.grid.nodes[i])));
    REQUIRE(worst < 1e-5);
    std::remove(path);

    {
        std::ofstream out(path);
        out << "wrong,header\n0,0\n";
    }
    REQUIRE_THROWS_AS(load_profile_csv(path), ConfigError);
    std::remove(path);
}
