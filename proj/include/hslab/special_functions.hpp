#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "hslab/errors.hpp"

namespace hslab {

namespace detail {
// Lanczos g = 7, 9-term coefficient set (Godfrey). Absolute error of
// log_gamma stays below ~1e-13 on the strip |Im z| <= 10 used here.
constexpr std::array<double, 9> lanczos_g7 = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
} // namespace detail

/// Principal-branch log Gamma(z) for complex z, Lanczos approximation with
/// reflection for Re z < 0.5. Throws on nonpositive-integer poles.
inline std::complex<double> log_gamma(std::complex<double> z) {
    using namespace std::complex_literals;
    const double pi = std::numbers::pi;
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw ValidationError("log_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z);
        // keep the principal branch by unwinding with the floor of Re z.
        const std::complex<double> lg = std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
        // std::sin overflows for large |Im|, but |Im z| <= 10 here is safe.
        return lg;
    }
    z -= 1.0;
    std::complex<double> x = detail::lanczos_g7[0];
    for (std::size_t i = 1; i < detail::lanczos_g7.size(); ++i)
        x += detail::lanczos_g7[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> gamma(std::complex<double> z) { return std::exp(log_gamma(z)); }

/// |Gamma(i nu)|^2 = pi / (nu sinh(pi nu)), the identity the PC coefficients
/// lean on; exposed so tests can probe it directly.
inline double gamma_imag_modulus_sq(double nu) {
    const double pi = std::numbers::pi;
    if (nu == 0.0) throw ValidationError("gamma_imag_modulus_sq: pole at nu = 0");
    return pi / (nu * std::sinh(pi * nu));
}

/// nu = -log(1 - |r|^2) / (2 pi), the exponent of the scalar jump factor.
inline double nu_of_modulus(double r_sq) {
    if (!(r_sq >= 0.0) || r_sq >= 1.0)
        throw ValidationError("nu_of_modulus: |r|^2 must lie in [0, 1)");
    return -std::log1p(-r_sq) / (2.0 * std::numbers::pi);
}

/// Inverse of nu_of_modulus.
inline double modulus_of_nu(double nu) {
    return -std::expm1(-2.0 * std::numbers::pi * nu);
}

} // namespace hslab
