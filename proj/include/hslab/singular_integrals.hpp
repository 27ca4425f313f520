#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/interpolation.hpp"
#include "hslab/quadrature.hpp"
#include "hslab/scattering.hpp"
#include "hslab/special_functions.hpp"

namespace hslab {

/// Exponent density nu(s) = -log(1-|r(s)|^2)/(2 pi) sampled along
/// Gamma1 = (-inf, -rho0] U [rho0, inf), with cubic interpolants per ray.
/// Outside the sampled ray domains nu is treated as zero (the tables are
/// built out to where nu has decayed below tail tolerance).
class NuTable {
public:
    NuTable() = default;

    static NuTable from_scattering(const ScatteringData& d, double rho0, double gap_min = 1e-6) {
        if (!(rho0 > 0.0)) throw ConfigError("NuTable: rho0 must be positive");
        std::vector<double> lx, lv, rx, rv;
        auto push = [&](double k, const complexd& r) {
            const double r2 = std::norm(r);
            if (1.0 - r2 < gap_min)
                throw ValidationError("NuTable: 1-|r|^2 below gap at k = " + std::to_string(k));
            const double nu = nu_of_modulus(r2);
            if (k < 0) {
                lx.push_back(k);
                lv.push_back(nu);
            } else {
                rx.push_back(k);
                rv.push_back(nu);
            }
        };
        for (std::size_t i = 0; i < d.k_grid.size(); ++i) {
            const double k = d.k_grid[i];
            if (k <= -rho0 - 1e-12 || k >= rho0 + 1e-12) push(k, d.r[i]);
        }
        // exact endpoint nodes at the stationary points
        push(-rho0, d.r_at(-rho0));
        push(rho0, d.r_at(rho0));

        auto sort2 = [](std::vector<double>& x, std::vector<double>& v) {
            std::vector<std::size_t> idx(x.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
            std::vector<double> xs, vs;
            for (auto i : idx) {
                if (!xs.empty() && x[i] - xs.back() < 1e-12) continue;
                xs.push_back(x[i]);
                vs.push_back(v[i]);
            }
            x = xs;
            v = vs;
        };
        sort2(lx, lv);
        sort2(rx, rv);
        if (lx.size() < 8 || rx.size() < 8)
            throw ValidationError("NuTable: scattering grid does not cover Gamma1 adequately");
        return NuTable(rho0, std::move(lx), std::move(lv), std::move(rx), std::move(rv));
    }

    /// Direct construction from samples (test and synthetic-model entry).
    NuTable(double rho0, std::vector<double> lx, std::vector<double> lv,
            std::vector<double> rx, std::vector<double> rv)
        : rho0_(rho0) {
        left_a_ = lx.front();
        left_b_ = lx.back();
        right_a_ = rx.front();
        right_b_ = rx.back();
        left_ = CubicSpline(lx, lv);
        right_ = CubicSpline(rx, rv);
        tail_value_ = std::max(std::abs(lv.front()), std::abs(rv.back()));
    }

    double rho0() const { return rho0_; }
    double k1() const { return -rho0_; }
    double k2() const { return rho0_; }
    double left_min() const { return left_a_; }
    double right_max() const { return right_b_; }
    double tail_value() const { return tail_value_; }

    double nu(double s) const {
        double v = 0.0;
        if (s >= left_a_ && s <= left_b_) v = left_(s);
        else if (s >= right_a_ && s <= right_b_) v = right_(s);
        else return 0.0;
        return v < 0.0 ? 0.0 : v; // interpolation may undershoot by rounding
    }

    double nu_at(int j) const { return j == 1 ? nu(k1()) : nu(k2()); }

    double l1_norm() const {
        auto f = [&](double s) { return std::abs(nu(s)); };
        return integrate_adaptive(f, left_a_, left_b_, 1e-10, 1e-16) +
               integrate_adaptive(f, right_a_, right_b_, 1e-10, 1e-16);
    }

    double evenness_residual() const {
        double worst = 0.0;
        const int n = 64;
        for (int i = 0; i <= n; ++i) {
            const double s = right_a_ + (std::min(right_b_, -left_a_) - right_a_) * i / double(n);
            worst = std::max(worst, std::abs(nu(s) - nu(-s)));
        }
        return worst;
    }

private:
    double rho0_ = 0.0;
    double left_a_ = 0, left_b_ = 0, right_a_ = 0, right_b_ = 0;
    CubicSpline left_, right_;
    double tail_value_ = 0.0;
};

namespace detail {

/// Integral of nu(s)/(s-k) over one oriented real segment [a, b], k off the
/// segment. When k sits close, the constant part of nu is split off and
/// integrated in closed form so the quadrature only sees a bounded factor.
inline std::complex<double> cauchy_segment(const NuTable& t, double a, double b,
                                           std::complex<double> k) {
    using cplx = std::complex<double>;
    if (!(b > a)) return {};
    const double re = std::clamp(k.real(), a, b);
    const double dist = std::abs(k - re);
    if (dist > 0.05 * std::max(1.0, t.rho0())) {
        auto f = [&](double s) -> cplx { return t.nu(s) / (s - k); };
        return integrate_adaptive(f, a, b, 1e-11, 1e-16);
    }
    const double s0 = re;
    const double nu0 = t.nu(s0);
    auto f = [&](double s) -> cplx { return (t.nu(s) - nu0) / (s - k); };
    // splitting at s0 keeps the near-singular factor well-sampled
    cplx smooth{};
    if (s0 > a + 1e-14) smooth += integrate_adaptive(f, a, s0, 1e-11, 1e-16);
    if (b > s0 + 1e-14) smooth += integrate_adaptive(f, s0, b, 1e-11, 1e-16);
    const cplx closed = nu0 * (std::log(b - k) - std::log(a - k));
    return smooth + closed;
}

} // namespace detail

/// delta(k) = exp[ i * integral over Gamma1 of nu(s)/(s-k) ds ], k off Gamma1
/// (boundary values via delta_boundary below).
inline std::complex<double> delta_eval(const NuTable& t, std::complex<double> k) {
    const std::complex<double> I = detail::cauchy_segment(t, t.left_min(), t.k1(), k) +
                                   detail::cauchy_segment(t, t.k2(), t.right_max(), k);
    return std::exp(std::complex<double>(0.0, 1.0) * I);
}

/// Boundary values on Gamma1 by epsilon-extrapolation from k +- i eps.
struct DeltaBoundary {
    std::complex<double> plus, minus;
};

inline DeltaBoundary delta_boundary(const NuTable& t, double s, double eps1 = 1e-6,
                                    double eps2 = 1e-5) {
    using cplx = std::complex<double>;
    auto extrap = [&](double sign) {
        const cplx f1 = delta_eval(t, cplx(s, sign * eps1));
        const cplx f2 = delta_eval(t, cplx(s, sign * eps2));
        return (eps2 * f1 - eps1 * f2) / (eps2 - eps1);
    };
    return {extrap(+1.0), extrap(-1.0)};
}

/// Residual of the multiplicative jump delta+ = delta- (1 - |r|^2) at s.
inline double jump_residual(const NuTable& t, double s) {
    const auto bv = delta_boundary(t, s);
    const double factor = modulus_of_nu(t.nu(s)); // |r(s)|^2 from nu
    return std::abs(bv.plus / bv.minus - (1.0 - factor));
}

struct DeltaExpansion {
    double delta1 = 0.0;
};

/// delta1 = integral over Gamma1 of nu(s)/s^2 ds (first expansion
/// coefficient of delta at k = 0); real and nonnegative by construction.
inline DeltaExpansion delta1(const NuTable& t) {
    auto f = [&](double s) { return t.nu(s) / (s * s); };
    DeltaExpansion e;
    e.delta1 = integrate_adaptive(f, t.left_min(), t.k1(), 1e-12, 1e-16) +
               integrate_adaptive(f, t.k2(), t.right_max(), 1e-12, 1e-16);
    return e;
}

/// Regularized endpoint value of the phase integral at stationary point j,
/// radius-independent real part:
///   reg = int_{|s-kj|<=rad} (nu(s)-nu(kj))/(s-kj) + int_{|s-kj|>rad} nu(s)/(s-kj)
///         -+ nu(kj) log(rad)   (minus for j=1, plus for j=2).
struct BetaValue {
    double reg = 0.0;   // radius-invariant real part
    double nu_j = 0.0;  // nu at the stationary point
    int j = 0;
};

inline BetaValue beta_at_stationary(const NuTable& t, int j, double radius = 1.0) {
    if (j != 1 && j != 2) throw ConfigError("beta_at_stationary: j must be 1 or 2");
    if (!(radius > 0.0)) throw ConfigError("beta_at_stationary: radius must be positive");
    const double kj = (j == 1) ? t.k1() : t.k2();
    const double nuj = t.nu_at(j);
    BetaValue out;
    out.j = j;
    out.nu_j = nuj;

    auto smooth = [&](double s) { return (t.nu(s) - nuj) / (s - kj); };
    auto plain = [&](double s) { return t.nu(s) / (s - kj); };

    double val = 0.0;
    if (j == 1) {
        const double cut = std::max(t.left_min(), kj - radius);
        val += integrate_adaptive(smooth, cut, kj, 1e-11, 1e-16);
        if (cut > t.left_min()) val += integrate_adaptive(plain, t.left_min(), cut, 1e-11, 1e-16);
        else val += -nuj * std::log((kj - t.left_min()) / radius); // table shorter than radius
        val += integrate_adaptive(plain, t.k2(), t.right_max(), 1e-11, 1e-16);
        val -= nuj * std::log(radius);
    } else {
        const double cut = std::min(t.right_max(), kj + radius);
        val += integrate_adaptive(smooth, kj, cut, 1e-11, 1e-16);
        if (cut < t.right_max()) val += integrate_adaptive(plain, cut, t.right_max(), 1e-11, 1e-16);
        else val += nuj * std::log((t.right_max() - kj) / radius);
        val += integrate_adaptive(plain, t.left_min(), t.k1(), 1e-11, 1e-16);
        val += nuj * std::log(radius);
    }
    out.reg = val;
    return out;
}

/// Complex endpoint value entering the local representation of delta near
/// k_j when approached from the upper half plane:
///   j = 1: delta(k) = (k-k1)^{+i nu1} exp(i beta),        beta = reg
///   j = 2: delta(k) = (k-k2)^{-i nu2} exp(i beta),        beta = reg + i pi nu2
/// The opposite exponent signs are forced by the side of Gamma1 the
/// stationary point sits on.
inline std::complex<double> beta_representation(const BetaValue& b) {
    if (b.j == 1) return {b.reg, 0.0};
    return {b.reg, std::numbers::pi * b.nu_j};
}

/// |delta(probe)/model - 1| with the branch-pinned local representation.
inline double representation_residual(const NuTable& t, int j, double dist) {
    using cplx = std::complex<double>;
    const double kj = (j == 1) ? t.k1() : t.k2();
    const BetaValue b = beta_at_stationary(t, j);
    const cplx kp(kj, dist); // probe straight above the stationary point
    const cplx lhs = delta_eval(t, kp);
    const double sgn = (j == 1) ? 1.0 : -1.0;
    const cplx expo = cplx(0.0, sgn * b.nu_j) * std::log(kp - kj) +
                      cplx(0.0, 1.0) * beta_representation(b);
    const cplx rhs = std::exp(expo);
    return std::abs(lhs / rhs - 1.0);
}

} // namespace hslab
