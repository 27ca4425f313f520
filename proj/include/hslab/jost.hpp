#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/profile.hpp"

namespace hslab {

enum class JostSide { from_left, from_right };

/// Matrix Jost solution along the grid, normalized to the identity at the
/// starting end. Entries are stored row-major: {phi11, phi12, phi21, phi22}.
struct JostTrajectory {
    double k = 0.0;
    JostSide side = JostSide::from_left;
    std::vector<double> x;
    std::vector<std::array<std::complex<double>, 4>> values;
    double max_det_drift = 0.0;
};

struct JostOptions {
    double theta_max = 0.04;  // max phase advance 2|k| w h per substep
    double det_tol = 1e-6;    // invariant-breach threshold
};

namespace detail {

/// One commutator-corrected exponential step of the first Jost column over
/// [x, x + dx]. The one-step map lies in U(1,1) for real k, so the
/// determinant (= |v1|^2 - |v2|^2 for the full matrix) is preserved to
/// rounding regardless of step size; dx only controls accuracy.
inline void magnus_step(const InitialProfile& p, double k, double x, double dx,
                        std::complex<double>& v1, std::complex<double>& v2) {
    constexpr double c1 = 0.5 - 0.28867513459481287; // 1/2 - sqrt(3)/6
    constexpr double c2 = 0.5 + 0.28867513459481287;
    const double xa = x + c1 * dx, xb = x + c2 * dx;
    const double qa = p.coupling(xa), qb = p.coupling(xb);
    const double wa = p.wave_speed(xa), wb = p.wave_speed(xb);

    const std::complex<double> da(0.0, 2.0 * k * wa), db(0.0, 2.0 * k * wb);
    const std::complex<double> P = 0.5 * dx * (qa + qb);
    const std::complex<double> D = 0.5 * dx * (da + db);
    // [B(xb), B(xa)] = [[0, e], [-e, 0]] with e = qb*da - qa*db
    constexpr double sqrt3_over_12 = 0.14433756729740643;
    const std::complex<double> E = sqrt3_over_12 * dx * dx * (qb * da - qa * db);

    const std::complex<double> tau = 0.5 * D;
    const std::complex<double> m11 = -tau, m12 = P + E, m21 = P - E;
    const std::complex<double> mu2 = tau * tau + P * P - E * E;
    const std::complex<double> mu = std::sqrt(mu2);
    std::complex<double> ch, shc;
    if (std::abs(mu) < 1e-5) {
        ch = 1.0 + mu2 * (0.5 + mu2 / 24.0);
        shc = 1.0 + mu2 * (1.0 / 6.0 + mu2 / 120.0);
    } else {
        ch = std::cosh(mu);
        shc = std::sinh(mu) / mu;
    }
    const std::complex<double> et = std::exp(tau);
    const std::complex<double> a11 = et * (ch + shc * m11);
    const std::complex<double> a12 = et * (shc * m12);
    const std::complex<double> a21 = et * (shc * m21);
    const std::complex<double> a22 = et * (ch - shc * m11);

    const std::complex<double> w1 = a11 * v1 + a12 * v2;
    const std::complex<double> w2 = a21 * v1 + a22 * v2;
    v1 = w1;
    v2 = w2;
}

inline int substeps_for(double k, double w_max, double h, double theta_max) {
    const double theta = 2.0 * std::abs(k) * w_max * h;
    int n = static_cast<int>(std::ceil(theta / theta_max));
    return n < 1 ? 1 : n;
}

} // namespace detail

/// Integrate the first Jost column from the boundary to x_target.
/// Returns (phi11, phi21); the second column is sigma1 * conj(first) for
/// real k and never needs its own integration.
inline std::pair<std::complex<double>, std::complex<double>>
jost_column_at(const InitialProfile& p, double k, JostSide side, double x_target,
               const JostOptions& opt = {}) {
    const double h = p.grid.spacing();
    double wmax = 1.0;
    for (double m : p.m0) wmax = std::max(wmax, std::sqrt(m + 1.0));
    const int nsub = detail::substeps_for(k, wmax, h, opt.theta_max);

    const double x0 = (side == JostSide::from_left) ? p.grid.front() : p.grid.back();
    const double dir = (side == JostSide::from_left) ? 1.0 : -1.0;
    const double len = (x_target - x0) * dir;
    if (len < -1e-12) throw ConfigError("jost_column_at: target lies behind the starting end");

    std::complex<double> v1 = 1.0, v2 = 0.0;
    const double step = h / static_cast<double>(nsub);
    const auto ncells = static_cast<std::size_t>(std::floor(len / step));
    double x = x0;
    for (std::size_t i = 0; i < ncells; ++i) {
        detail::magnus_step(p, k, x, dir * step, v1, v2);
        x += dir * step;
    }
    const double rem = (x_target - x) * dir;
    if (rem > 1e-14 * p.grid.half_width)
        detail::magnus_step(p, k, x, dir * rem, v1, v2);
    return {v1, v2};
}

/// Full trajectory over all grid nodes (diagnostic / test surface).
inline JostTrajectory jost_solve(const InitialProfile& p, double k, JostSide side,
                                 const JostOptions& opt = {}) {
    const std::size_t n = p.grid.node_count;
    const double h = p.grid.spacing();
    double wmax = 1.0;
    for (double m : p.m0) wmax = std::max(wmax, std::sqrt(m + 1.0));
    const int nsub = detail::substeps_for(k, wmax, h, opt.theta_max);

    JostTrajectory tr;
    tr.k = k;
    tr.side = side;
    tr.x = p.grid.nodes;
    tr.values.assign(n, {});

    std::complex<double> v1 = 1.0, v2 = 0.0;
    auto put = [&](std::size_t i) {
        tr.values[i] = {v1, std::conj(v2), v2, std::conj(v1)};
        const double det = std::norm(v1) - std::norm(v2);
        tr.max_det_drift = std::max(tr.max_det_drift, std::abs(det - 1.0));
    };
    if (side == JostSide::from_left) {
        put(0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double x = p.grid.nodes[i];
            for (int s = 0; s < nsub; ++s)
                detail::magnus_step(p, k, x + s * h / nsub, h / nsub, v1, v2);
            put(i + 1);
        }
    } else {
        put(n - 1);
        for (std::size_t i = n - 1; i > 0; --i) {
            const double x = p.grid.nodes[i];
            for (int s = 0; s < nsub; ++s)
                detail::magnus_step(p, k, x - s * h / nsub, -h / nsub, v1, v2);
            put(i - 1);
        }
    }
    if (tr.max_det_drift > opt.det_tol)
        throw ValidationError("jost_solve: determinant drift " + std::to_string(tr.max_det_drift) +
                              " exceeds tolerance (invariant breach)");
    return tr;
}

} // namespace hslab
