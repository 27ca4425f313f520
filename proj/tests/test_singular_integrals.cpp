#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "hslab/singular_integrals.hpp"
#include "hslab/scattering.hpp"

using namespace hslab;
using cplx = std::complex<double>;

namespace {

NuTable constant_block(double nu0, double a, double b, double rho0) {
    // nu = nu0 on [a,b] and [-b,-a], zero elsewhere on Gamma1
    std::vector<double> rx, rv, lx, lv;
    for (int i = 0; i <= 32; ++i) {
        const double s = a + (b - a) * i / 32.0;
        rx.push_back(s);
        rv.push_back(nu0);
        lx.push_back(-s);
        lv.push_back(nu0);
    }
    std::sort(lx.begin(), lx.end());
    return NuTable(rho0, lx, lv, rx, rv);
}

NuTable gaussian_pipeline_table(double rho0) {
    static ScatteringData data = [] {
        auto p = build_profile(ProfileSpec::gaussian(0.1, 1.0, 0.0, 12.0, 2048));
        auto ks = make_k_grid(8.0, 384, true, {1.0});
        return scattering_table(p, ks);
    }();
    return NuTable::from_scattering(data, rho0);
}

} // namespace

TEST_CASE("vanishing density gives trivial delta") {
    auto t = constant_block(0.0, 1.0, 4.0, 1.0);
    REQUIRE(std::abs(delta_eval(t, cplx(0.0, 0.5)) - 1.0) < 1e-12);
    REQUIRE(std::abs(delta_eval(t, cplx(2.0, 1e-3)) - 1.0) < 1e-12);
    REQUIRE(delta1(t).delta1 == 0.0);
    REQUIRE(beta_at_stationary(t, 1).reg == 0.0);
    REQUIRE(beta_at_stationary(t, 2).reg == 0.0);
}

TEST_CASE("delta1 closed form for a constant block") {
    // nu = nu0 on [1,2] U [-2,-1]: delta1 = 2 nu0 int_1^2 s^-2 = nu0
    const double nu0 = 0.37;
    auto t = constant_block(nu0, 1.0, 2.0, 1.0);
    REQUIRE(std::abs(delta1(t).delta1 - nu0) < 1e-10);
}

TEST_CASE("unit nu at one node via the modulus map") {
    const double r2 = -std::expm1(-2.0 * std::numbers::pi);
    REQUIRE(std::abs(nu_of_modulus(r2) - 1.0) < 1e-14);
}

TEST_CASE("beta closed form for an offset block") {
    // nu = nu0 on [2,3] U [-3,-2], rho0 = 1, j = 1:
    // beta1 = nu0 (log(1/2) + log(4/3)) = nu0 log(2/3)
    const double nu0 = 0.21;
    auto t = constant_block(nu0, 2.0, 3.0, 1.0);
    const auto b1 = beta_at_stationary(t, 1);
    REQUIRE(b1.nu_j == 0.0);
    REQUIRE(std::abs(b1.reg - nu0 * std::log(2.0 / 3.0)) < 1e-10);
    // mirror symmetry: the j=2 value is the negative
    const auto b2 = beta_at_stationary(t, 2);
    REQUIRE(std::abs(b2.reg + b1.reg) < 1e-10);
}

TEST_CASE("far-field bound for compactly supported density") {
    const double nu0 = 0.4;
    auto t = constant_block(nu0, 1.0, 2.0, 1.0);
    const double l1 = t.l1_norm();
    REQUIRE(std::abs(l1 - 2.0 * nu0) < 1e-8);
    REQUIRE(std::abs(delta_eval(t, cplx(100.0, 0.0)) - 1.0) <= 1.1 * l1 / 99.0);
    REQUIRE(std::abs(delta_eval(t, cplx(0.0, 100.0)) - 1.0) <= 2.0 * l1 / 100.0);
}

TEST_CASE("radius independence of the regularized endpoint value") {
    auto t = gaussian_pipeline_table(1.0);
    for (int j : {1, 2}) {
        const auto b1 = beta_at_stationary(t, j, 1.0);
        const auto b05 = beta_at_stationary(t, j, 0.5);
        REQUIRE(std::abs(b1.reg - b05.reg) < 1e-8);
    }
}

TEST_CASE("gaussian pipeline: evenness, jump, expansion, symmetry") {
    auto t = gaussian_pipeline_table(1.0);
    REQUIRE(t.evenness_residual() < 1e-8);
    REQUIRE(t.tail_value() < 1e-8);

    // jump relation at interior probes of Gamma1
    for (double s : {-2.4, -1.45, 1.3, 2.0, 3.1})
        REQUIRE(jump_residual(t, s) < 1e-6);

    // two independent quadrature routes to delta1
    const double d1 = delta1(t).delta1;
    auto f = [&](double s) { return t.nu(s) / (s * s); };
    const double d1_simpson = integrate_simpson(f, t.left_min(), t.k1(), 1e-12) +
                              integrate_simpson(f, t.k2(), t.right_max(), 1e-12);
    REQUIRE(d1 >= 0.0);
    REQUIRE(std::abs(d1 - d1_simpson) < 1e-8);

    // small-k expansion consistency: delta(k) ~ 1 + i delta1 k
    for (double d : {0.01, 0.005}) {
        const cplx k(0.0, d);
        const cplx lhs = delta_eval(t, k);
        const cplx rhs = 1.0 + cplx(0.0, d1) * k;
        REQUIRE(std::abs(lhs - rhs) < 10.0 * d * d);
    }

    // conjugation symmetry |delta(k)| |delta(conj k)| = 1
    for (cplx k : {cplx(0.3, 0.8), cplx(-1.7, 0.4), cplx(2.2, 1.1)})
        REQUIRE(std::abs(std::abs(delta_eval(t, k)) * std::abs(delta_eval(t, std::conj(k))) - 1.0) <
                1e-8);
}

TEST_CASE("local representation near the stationary points") {
    auto t = gaussian_pipeline_table(1.0);
    for (int j : {1, 2})
        for (double frac : {0.01, 0.05})
            REQUIRE(representation_residual(t, j, frac * t.rho0()) < 1e-4);
}

TEST_CASE("Hoelder continuity of the endpoint phase") {
    auto t = gaussian_pipeline_table(1.0);
    const auto b = beta_at_stationary(t, 1);
    const cplx beta_end = beta_representation(b);
    std::vector<double> ratio;
    for (double d : {0.001, 0.004, 0.016, 0.064}) {
        const cplx kp(t.k1(), d);
        const cplx I = std::log(delta_eval(t, kp)) / cplx(0.0, 1.0);
        const cplx beta_k = I - cplx(0.0, b.nu_j) * std::log(kp - t.k1());
        ratio.push_back(std::abs(beta_k - beta_end) / std::sqrt(d));
    }
    const double worst = *std::max_element(ratio.begin(), ratio.end());
    const double median = ratio[ratio.size() / 2];
    REQUIRE(worst < 10.0 * std::max(median, 1e-6)); // no branch blow-up near the endpoint
}
