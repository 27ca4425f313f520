#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/interpolation.hpp"
#include "hslab/jost.hpp"
#include "hslab/profile.hpp"
#include "hslab/quadrature.hpp"
#include "hslab/threading.hpp"

namespace hslab {

using complexd = std::complex<double>;

/// H(x_i) = integral of sqrt(m0+1) from x_i to L. Differences of this table
/// reproduce the phase increments of the spectral ODE.
inline std::vector<double> phase_primitive(const InitialProfile& p) {
    std::vector<double> w(p.grid.node_count);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sqrt(p.m0[i] + 1.0);
    return cumulative_from_right(w, p.grid.spacing());
}

struct ScatteringPoint {
    double k = 0.0;
    complexd a, b, r;
    double unitarity_residual = 0.0;
    double crosscheck_residual = 0.0;
};

/// Per-profile constants shared by all k evaluations of a sweep.
struct ScatterContext {
    double c = 0.0;   // total shift, integral of (sqrt(m+1)-1) over the grid
    double c0 = 0.0;  // same integral over [0, L]
    double x_alt = 0.5;
    double phase_alt = 0.0; // phase argument continuing the x=0 extraction to x_alt
    JostOptions jost;
};

inline ScatterContext prepare_scatter(const InitialProfile& p, const JostOptions& opt = {}) {
    ScatterContext ctx;
    ctx.jost = opt;
    auto dens = [&](double x) { return sqrt1pm1(p.eval_m(x)); };
    const double L = p.grid.half_width;
    ctx.c = integrate_adaptive(dens, p.grid.front(), L, 1e-13, 1e-15);
    ctx.c0 = integrate_adaptive(dens, 0.0, L, 1e-13, 1e-15);
    ctx.x_alt = std::min(0.5, 0.25 * L);
    // The Jost-column combination d(x) picks up e^{2ik p(x)} along x, so the
    // x = 0 extraction continues to x_alt with the increment p(x_alt) - p(0)
    // removed. p(x) = x - integral_x^L (sqrt(m+1)-1).
    const double p_at_alt = ctx.x_alt - integrate_adaptive(dens, ctx.x_alt, L, 1e-13, 1e-15);
    ctx.phase_alt = -ctx.c0 - (p_at_alt + ctx.c0);
    return ctx;
}

namespace detail {
inline std::pair<complexd, complexd>
scattering_pair_at(const InitialProfile& p, double k, double x_eval, double phase_p,
                   const JostOptions& opt) {
    auto [l1, l2] = jost_column_at(p, k, JostSide::from_left, x_eval, opt);
    auto [r1, r2] = jost_column_at(p, k, JostSide::from_right, x_eval, opt);
    const complexd a = l1 * std::conj(r1) - l2 * std::conj(r2);
    const complexd d = l1 * r2 - l2 * r1;
    const complexd phase = std::exp(complexd(0.0, 2.0 * k * phase_p));
    const complexd b = std::conj(phase * d); // conj(b) = e^{2ikp} * d, k real
    return {a, b};
}
} // namespace detail

/// Scattering coefficients at one real k, evaluated at x = 0 with a
/// second-evaluation-point consistency check.
inline ScatteringPoint scattering_at(const InitialProfile& p, double k, const ScatterContext& ctx) {
    ScatteringPoint out;
    out.k = k;
    auto [a, b] = detail::scattering_pair_at(p, k, 0.0, -ctx.c0, ctx.jost);
    out.a = a;
    out.b = b;
    if (std::abs(a) < 1e-8)
        throw ValidationError("scattering_at: |a| ~ 0 at k = " + std::to_string(k) +
                              " contradicts zero-free transmission");
    out.r = -std::conj(b) / a;
    out.unitarity_residual = std::abs(std::norm(a) - 1.0 - std::norm(b));

    auto [a2, b2] = detail::scattering_pair_at(p, k, ctx.x_alt, ctx.phase_alt, ctx.jost);
    out.crosscheck_residual = std::abs(a2 - a) + std::abs(b2 - b);
    return out;
}

struct ScatteringData {
    std::vector<double> k_grid;
    std::vector<complexd> a, b, r;
    double c = 0.0, c0 = 0.0;
    std::vector<double> phase_table; // H(x) on the profile grid
    SpatialGrid grid;

    double unitarity_residual = 0.0;
    double crosscheck_residual = 0.0;
    double max_abs_r = 0.0;

    complexd r_at(double k) const {
        // exact on nodes (stationary points are inserted as nodes upstream)
        auto it = std::lower_bound(k_grid.begin(), k_grid.end(), k);
        if (it != k_grid.end()) {
            const auto i = static_cast<std::size_t>(it - k_grid.begin());
            if (std::abs(*it - k) < 1e-13 * std::max(1.0, std::abs(k))) return r[i];
        }
        return r_interp_(k);
    }

    double abs_r_sq_at(double k) const {
        const complexd rv = r_at(k);
        return std::norm(rv);
    }

    void finalize() { r_interp_ = ComplexSpline(k_grid, r); }

private:
    ComplexSpline r_interp_;
};

/// Symmetric k grid on [-kmax, kmax]: n uniformly spaced half-offset nodes
/// (avoiding 0), optional k = 0 node, and x4-refined clusters with exact
/// nodes at +-rho for every requested stationary radius.
inline std::vector<double> make_k_grid(double kmax, std::size_t n, bool include_zero,
                                       const std::vector<double>& stationary_radii = {},
                                       double refine_halfwidth = 0.5) {
    if (!(kmax > 0.0) || n < 16) throw ConfigError("make_k_grid: bad parameters");
    std::vector<double> ks;
    const double dk = 2.0 * kmax / static_cast<double>(n);
    ks.reserve(n + 64 * stationary_radii.size() + 1);
    for (std::size_t i = 0; i < n; ++i)
        ks.push_back(-kmax + (static_cast<double>(i) + 0.5) * dk);
    if (include_zero) ks.push_back(0.0);
    for (double rho : stationary_radii) {
        if (!(rho > 0.0)) continue;
        const double fine = dk / 4.0;
        const auto half = static_cast<int>(std::ceil(refine_halfwidth / fine));
        for (int j = -half; j <= half; ++j) {
            const double off = j * fine;
            ks.push_back(rho + off);
            ks.push_back(-rho - off);
        }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             ks.end());
    return ks;
}

/// Parallel sweep of scattering_at over a k grid.
inline ScatteringData scattering_table(const InitialProfile& p, const std::vector<double>& k_grid,
                                       unsigned threads = 0, const JostOptions& opt = {}) {
    ScatteringData data;
    data.k_grid = k_grid;
    data.grid = p.grid;
    const ScatterContext ctx = prepare_scatter(p, opt);
    data.c = ctx.c;
    data.c0 = ctx.c0;
    data.phase_table = phase_primitive(p);

    const std::size_t n = k_grid.size();
    data.a.resize(n);
    data.b.resize(n);
    data.r.resize(n);
    std::vector<double> uni(n, 0.0), cross(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        const ScatteringPoint pt = scattering_at(p, k_grid[i], ctx);
        data.a[i] = pt.a;
        data.b[i] = pt.b;
        data.r[i] = pt.r;
        uni[i] = pt.unitarity_residual;
        cross[i] = pt.crosscheck_residual;
    }, threads);

    for (std::size_t i = 0; i < n; ++i) {
        data.unitarity_residual = std::max(data.unitarity_residual, uni[i]);
        data.crosscheck_residual = std::max(data.crosscheck_residual, cross[i]);
        data.max_abs_r = std::max(data.max_abs_r, std::abs(data.r[i]));
    }
    if (data.max_abs_r >= 1.0)
        throw ValidationError("scattering_table: |r| >= 1 violates the spectral gap");
    data.finalize();
    return data;
}

struct ScatteringReport {
    double unitarity_residual = 0.0;
    double symmetry_residual = 0.0;
    double cubic_slope = 0.0;     // log-log slope of the small-k remainder
    std::size_t cubic_points = 0;
    double a0_error = 0.0;        // |a(0) - 1|
    double da0_error = 0.0;       // |Im a'(0) - c|
    double max_abs_r = 0.0;
    double gap = 0.0;             // 1 - max |r|^2
    bool unitarity_ok = false, symmetry_ok = false, slope_ok = false;
    bool a0_ok = false, da0_ok = false, gap_ok = false;
    bool pass = false;
};

inline ScatteringReport validate_scattering(const ScatteringData& d, double unitarity_tol = 1e-8,
                                            double symmetry_tol = 1e-9, double slope_min = 2.7) {
    ScatteringReport rep;
    const std::size_t n = d.k_grid.size();
    for (std::size_t i = 0; i < n; ++i)
        rep.unitarity_residual = std::max(rep.unitarity_residual,
                                          std::abs(std::norm(d.a[i]) - 1.0 - std::norm(d.b[i])));
    // symmetry a(-k) = conj(a(k)) over mirrored pairs
    for (std::size_t i = 0; i < n; ++i) {
        const double k = d.k_grid[i];
        if (k <= 0.0) continue;
        auto it = std::lower_bound(d.k_grid.begin(), d.k_grid.end(), -k - 1e-13);
        if (it == d.k_grid.end() || std::abs(*it + k) > 1e-12) continue;
        const auto j = static_cast<std::size_t>(it - d.k_grid.begin());
        rep.symmetry_residual = std::max(rep.symmetry_residual, std::abs(d.a[j] - std::conj(d.a[i])));
        rep.symmetry_residual = std::max(rep.symmetry_residual,
                                         std::abs(std::abs(d.r[j]) - std::abs(d.r[i])));
    }
    // small-k law: a(k) = 1 + ikc + (ik)^2 c^2/2 + O(k^3)
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = d.k_grid[i];
        const double ak = std::abs(k);
        if (ak < 0.01 || ak > 0.2) continue;
        const complexd model = 1.0 + complexd(0.0, k * d.c) - 0.5 * k * k * d.c * d.c;
        const double rres = std::abs(d.a[i] - model);
        if (rres < 1e-13) continue; // below the numerical floor, useless for the fit
        lx.push_back(std::log(ak));
        ly.push_back(std::log(rres));
    }
    rep.cubic_points = lx.size();
    if (lx.size() >= 4) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        const double m = static_cast<double>(lx.size());
        rep.cubic_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    // a(0) and Im a'(0)
    auto it0 = std::lower_bound(d.k_grid.begin(), d.k_grid.end(), -1e-14);
    if (it0 != d.k_grid.end() && std::abs(*it0) < 1e-13) {
        const auto i0 = static_cast<std::size_t>(it0 - d.k_grid.begin());
        rep.a0_error = std::abs(d.a[i0] - 1.0);
        if (i0 > 0 && i0 + 1 < n) {
            const double kp = d.k_grid[i0 + 1];
            const complexd da = (d.a[i0 + 1] - d.a[i0 - 1]) / (2.0 * kp);
            rep.da0_error = std::abs(da.imag() - d.c);
        }
    }
    rep.max_abs_r = d.max_abs_r;
    rep.gap = 1.0 - d.max_abs_r * d.max_abs_r;

    rep.unitarity_ok = rep.unitarity_residual <= unitarity_tol;
    rep.symmetry_ok = rep.symmetry_residual <= symmetry_tol;
    rep.slope_ok = rep.cubic_points < 4 || rep.cubic_slope >= slope_min;
    rep.a0_ok = rep.a0_error <= 1e-6;
    rep.da0_ok = rep.da0_error <= 1e-4;
    rep.gap_ok = rep.gap > 0.0;
    rep.pass = rep.unitarity_ok && rep.symmetry_ok && rep.slope_ok && rep.a0_ok && rep.da0_ok &&
               rep.gap_ok;
    return rep;
}

} // namespace hslab
