#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hslab/special_functions.hpp"

using namespace hslab;
using namespace std::complex_literals;

TEST_CASE("log_gamma at exact points") {
    REQUIRE(std::abs(log_gamma(1.0 + 0.0i)) < 1e-13);
    REQUIRE(std::abs(log_gamma(0.5 + 0.0i) - std::log(std::sqrt(std::numbers::pi))) < 1e-13);
    REQUIRE(std::abs(log_gamma(5.0 + 0.0i) - std::log(24.0)) < 1e-12);
    REQUIRE_THROWS_AS(log_gamma(std::complex<double>(-3.0, 0.0)), ValidationError);
}

TEST_CASE("modulus of Gamma(i) against the sinh identity") {
    // independent oracle: |Gamma(i nu)|^2 = pi / (nu sinh(pi nu)), evaluated
    // through elementary functions only
    const double target = std::sqrt(std::numbers::pi / std::sinh(std::numbers::pi));
    const std::complex<double> g = gamma(1.0i);
    REQUIRE(std::abs(std::abs(g) - target) < 1e-12);

    for (double nu : {0.05, 0.3, 1.0, 2.5, 5.0}) {
        const double lhs = std::norm(gamma(std::complex<double>(0.0, nu)));
        REQUIRE(std::abs(lhs - gamma_imag_modulus_sq(nu)) < 1e-10 * gamma_imag_modulus_sq(nu));
    }
}

TEST_CASE("recurrence residual on random strip points") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> re(-4.0, 6.0), im(-10.0, 10.0);
    int tested = 0;
    for (int i = 0; i < 200; ++i) {
        std::complex<double> z(re(rng), im(rng));
        if (std::abs(z.imag()) < 0.05 && z.real() < 0.6) continue; // keep clear of poles
        const auto lhs = log_gamma(z + 1.0);
        const auto rhs = log_gamma(z) + std::log(z);
        // principal-branch logs may differ by 2 pi i across cuts; compare mod 2pi
        std::complex<double> d = lhs - rhs;
        const double two_pi = 2.0 * std::numbers::pi;
        double di = std::remainder(d.imag(), two_pi);
        REQUIRE(std::abs(d.real()) < 1e-11);
        REQUIRE(std::abs(di) < 1e-11);
        ++tested;
    }
    REQUIRE(tested > 150);
}

TEST_CASE("reflection consistency near the imaginary axis") {
    for (double nu : {0.2, 1.0, 3.0}) {
        const std::complex<double> z(0.3, nu);
        const auto prod = log_gamma(z) + log_gamma(1.0 - z);
        const auto expect = std::log(std::numbers::pi / std::sin(std::numbers::pi * z));
        std::complex<double> d = prod - expect;
        REQUIRE(std::abs(d.real()) < 1e-11);
        REQUIRE(std::abs(std::remainder(d.imag(), 2.0 * std::numbers::pi)) < 1e-11);
    }
}

TEST_CASE("nu map and its inverse") {
    REQUIRE(nu_of_modulus(0.0) == 0.0);
    REQUIRE(std::abs(nu_of_modulus(-std::expm1(-2.0 * std::numbers::pi)) - 1.0) < 1e-14);
    REQUIRE(std::abs(nu_of_modulus(0.75) - std::log(2.0) / std::numbers::pi) < 1e-15);
    REQUIRE_THROWS_AS(nu_of_modulus(1.0), ValidationError);
    REQUIRE_THROWS_AS(nu_of_modulus(1.5), ValidationError);

    double prev = -1.0;
    for (double r2 = 0.0; r2 < 0.999; r2 += 0.001) {
        const double nu = nu_of_modulus(r2);
        REQUIRE(nu > prev);
        prev = nu;
        REQUIRE(std::abs(modulus_of_nu(nu) - r2) < 1e-15);
    }
}
