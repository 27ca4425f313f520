#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/fourier.hpp"
#include "hslab/grid.hpp"
#include "hslab/interpolation.hpp"

namespace hslab {

/// sqrt(1 + m) - 1 without cancellation for small m.
inline double sqrt1pm1(double m) { return m / (std::sqrt(1.0 + m) + 1.0); }

struct GaussianTerm {
    double amplitude = 0.0;
    double width = 1.0;   // sigma in exp(-((x-x0)/sigma)^2)
    double center = 0.0;
};

struct ProfileSpec {
    enum class Kind { zero, gaussian_sum, file };
    Kind kind = Kind::zero;
    std::vector<GaussianTerm> terms;
    std::string path;

    double half_width = 12.0;
    std::size_t node_count = 1024;
    double epsilon0 = 1e-3;   // required margin of m0 + 1 above zero
    double tail_tol = 1e-10;  // decay demanded at the outer 1% of nodes

    static ProfileSpec zero(double L, std::size_t N) {
        ProfileSpec s;
        s.kind = Kind::zero;
        s.half_width = L;
        s.node_count = N;
        return s;
    }
    static ProfileSpec gaussian(double A, double sigma, double x0, double L, std::size_t N) {
        ProfileSpec s;
        s.kind = Kind::gaussian_sum;
        s.terms = {{A, sigma, x0}};
        s.half_width = L;
        s.node_count = N;
        return s;
    }
};

/// Initial datum together with everything downstream stages query:
/// samples of u0 and m0 = -u0'' plus pointwise evaluators for the ODE
/// coefficient functions (analytic when the family allows it).
struct InitialProfile {
    SpatialGrid grid;
    std::vector<double> u0, u0_x, u0_xx, m0;
    double epsilon0 = 1e-3;
    double tail_tol = 1e-10;
    std::string derivative_method; // "analytic" or "fd4"
    double diff_residual = 0.0;    // sup |fd4(u0) + m0|, consistency metric
    bool analytic = false;
    std::vector<GaussianTerm> terms; // retained for analytic evaluators / rescaling

    double min_m_plus_1 = 0.0;

    double eval_m(double x) const {
        if (analytic) {
            double m = 0.0;
            for (const auto& t : terms) {
                const double z = (x - t.center) / t.width;
                m += t.amplitude * (2.0 - 4.0 * z * z) * std::exp(-z * z) / (t.width * t.width);
            }
            return m;
        }
        return m_spline_(x);
    }

    double eval_m_x(double x) const {
        if (analytic) {
            double mx = 0.0;
            for (const auto& t : terms) {
                const double z = (x - t.center) / t.width;
                mx += t.amplitude * (8.0 * z * z * z - 12.0 * z) * std::exp(-z * z) /
                      (t.width * t.width * t.width);
            }
            return mx;
        }
        return mx_spline_(x);
    }

    double eval_u(double x) const {
        if (analytic) {
            double u = 0.0;
            for (const auto& t : terms) {
                const double z = (x - t.center) / t.width;
                u += t.amplitude * std::exp(-z * z);
            }
            return u;
        }
        return u_spline_(x);
    }

    /// sqrt(m(x) + 1), the local phase speed of the spectral ODE.
    double wave_speed(double x) const { return std::sqrt(eval_m(x) + 1.0); }

    /// m_x / (4 (m + 1)), the off-diagonal coupling of the spectral ODE.
    double coupling(double x) const {
        const double m = eval_m(x);
        return eval_m_x(x) / (4.0 * (m + 1.0));
    }

    void finalize_evaluators() {
        if (!analytic) {
            u_spline_ = CubicSpline(grid.nodes, u0);
            m_spline_ = CubicSpline(grid.nodes, m0);
            std::vector<double> mx(grid.node_count);
            fd4_derivative(m0, grid.spacing(), mx);
            mx_spline_ = CubicSpline(grid.nodes, mx);
        }
    }

    static void fd4_derivative(const std::vector<double>& f, double h, std::vector<double>& out) {
        const std::size_t n = f.size();
        out.assign(n, 0.0);
        for (std::size_t i = 2; i + 2 < n; ++i)
            out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
        out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
        out[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]) / (12.0 * h);
        out[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]) / (12.0 * h);
    }

private:
    CubicSpline u_spline_, m_spline_, mx_spline_;
};

enum class DiffMethod { spectral, fd4 };

/// -d^2/dx^2 of uniformly sampled u. Spectral differentiation rides on the
/// periodic embedding (valid because the samples decay at the edges) and is
/// the default for smooth data; fd4 is the choice for externally sampled
/// input where ringing on noise would be worse than the stencil error.
inline std::vector<double> derive_m(const std::vector<double>& u, const SpatialGrid& grid,
                                    DiffMethod method = DiffMethod::spectral,
                                    double decay_tol = 1e-6) {
    const std::size_t n = u.size();
    if (n != grid.node_count) throw ConfigError("derive_m: sample count does not match grid");
    const double edge = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[n - 1]), std::abs(u[n - 2])});
    if (edge > decay_tol) throw HypothesisError("derive_m: input does not decay at the grid edges");
    std::vector<double> m(n, 0.0);
    if (method == DiffMethod::spectral) {
        // nodes 0..n-2 form one period of length 2L; node n-1 is the image of node 0
        PeriodicSpectral sp(n - 1, 2.0 * grid.half_width);
        std::vector<double> d2(n - 1);
        sp.derivative(u.data(), d2.data(), 2);
        for (std::size_t i = 0; i + 1 < n; ++i) m[i] = -d2[i];
        m[n - 1] = m[0];
        return m;
    }
    const double h2 = grid.spacing() * grid.spacing();
    for (std::size_t i = 2; i + 2 < n; ++i)
        m[i] = -(-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] - u[i + 2]) / (12.0 * h2);
    // one-sided 4th-order second derivatives at the four boundary nodes
    auto d2 = [&](std::size_t i0, int s) {
        return (45.0 * u[i0] - 154.0 * u[i0 + s] + 214.0 * u[i0 + 2 * s] - 156.0 * u[i0 + 3 * s] +
                61.0 * u[i0 + 4 * s] - 10.0 * u[i0 + 5 * s]) / (12.0 * h2);
    };
    m[0] = -d2(0, 1);
    m[1] = -d2(1, 1);
    m[n - 2] = -d2(n - 2, -1);
    m[n - 1] = -d2(n - 1, -1);
    return m;
}

namespace detail {

inline void check_invariants(InitialProfile& p) {
    const std::size_t n = p.grid.node_count;
    double min_mp1 = 1e300;
    for (double m : p.m0) min_mp1 = std::min(min_mp1, m + 1.0);
    p.min_m_plus_1 = min_mp1;
    if (min_mp1 < p.epsilon0)
        throw HypothesisError("profile hypothesis violated: min(m0 + 1) = " +
                              std::to_string(min_mp1) + " < epsilon0 = " +
                              std::to_string(p.epsilon0));
    const auto tail_nodes = std::max<std::size_t>(1, n / 100);
    double tail = 0.0;
    for (std::size_t i = 0; i < tail_nodes; ++i) {
        for (const auto* f : {&p.u0, &p.u0_x, &p.u0_xx}) {
            tail = std::max(tail, std::abs((*f)[i]));
            tail = std::max(tail, std::abs((*f)[n - 1 - i]));
        }
    }
    if (tail > p.tail_tol)
        throw HypothesisError("profile truncation invalid: tails reach " + std::to_string(tail) +
                              " > tail_tol; enlarge the grid half-width");
    // m0 must be consistent with -u0'' up to differencing error
    if (n >= 8) {
        auto m_fd = derive_m(p.u0, p.grid, DiffMethod::fd4, std::max(p.tail_tol * 10.0, 1e-8));
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(m_fd[i] - p.m0[i]));
        p.diff_residual = res;
        const double h4 = std::pow(p.grid.spacing(), 4);
        double scale = 0.0;
        for (double v : p.m0) scale = std::max(scale, std::abs(v));
        if (res > std::max(1e-6, 1e3 * h4 * std::max(1.0, scale)))
            throw ValidationError("profile: m0 disagrees with -u0'' beyond differencing tolerance");
    }
}

} // namespace detail

inline InitialProfile load_profile_csv(const std::string& path);

inline InitialProfile build_profile(const ProfileSpec& spec) {
    if (spec.kind == ProfileSpec::Kind::file) return load_profile_csv(spec.path);

    InitialProfile p;
    p.grid = SpatialGrid(spec.half_width, spec.node_count);
    p.epsilon0 = spec.epsilon0;
    p.tail_tol = spec.tail_tol;
    const std::size_t n = p.grid.node_count;
    p.u0.assign(n, 0.0);
    p.u0_x.assign(n, 0.0);
    p.u0_xx.assign(n, 0.0);
    p.m0.assign(n, 0.0);

    if (spec.kind == ProfileSpec::Kind::zero) {
        p.analytic = true;
        p.derivative_method = "analytic";
    } else {
        p.analytic = true;
        p.terms = spec.terms;
        p.derivative_method = "analytic";
        for (std::size_t i = 0; i < n; ++i) {
            const double x = p.grid.nodes[i];
            double u = 0, ux = 0, uxx = 0;
            for (const auto& t : spec.terms) {
                const double z = (x - t.center) / t.width;
                const double e = std::exp(-z * z);
                u += t.amplitude * e;
                ux += t.amplitude * (-2.0 * z) * e / t.width;
                uxx += t.amplitude * (4.0 * z * z - 2.0) * e / (t.width * t.width);
            }
            p.u0[i] = u;
            p.u0_x[i] = ux;
            p.u0_xx[i] = uxx;
            p.m0[i] = -uxx;
        }
    }
    detail::check_invariants(p);
    p.finalize_evaluators();
    return p;
}

inline InitialProfile load_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open profile file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty profile file: " + path);
    if (line != "x,u0" && line != "x,u0\r")
        throw ConfigError("profile file must start with header 'x,u0'");
    std::vector<double> xs, us;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw ConfigError("malformed profile row: " + line);
        xs.push_back(std::stod(a));
        us.push_back(std::stod(b));
    }
    const std::size_t n = xs.size();
    if (n < 256) throw ConfigError("profile file needs at least 256 samples");
    const double h = xs[1] - xs[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = xs[i + 1] - xs[i];
        if (!(d > 0.0) || std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ConfigError("profile x-column must be uniform (1e-9 relative) and increasing");
    }
    if (std::abs(xs.front() + xs.back()) > 1e-9 * std::abs(xs.back()))
        throw ConfigError("profile grid must be symmetric about 0");

    InitialProfile p;
    p.grid = SpatialGrid(xs.back(), n);
    p.analytic = false;
    p.derivative_method = "fd4";
    p.u0 = us;
    InitialProfile::fd4_derivative(us, h, p.u0_x);
    p.m0 = derive_m(us, p.grid, DiffMethod::fd4);
    p.u0_xx.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.u0_xx[i] = -p.m0[i];
    detail::check_invariants(p);
    p.finalize_evaluators();
    return p;
}

/// Map a profile to the unit-omega normalization: u~(x~) = w^3 u(w^-2 x~)
/// on the rescaled grid. w = 1 is the identity.
inline InitialProfile scale_omega(const InitialProfile& p, double omega) {
    if (!(omega > 0.0)) throw ConfigError("scale_omega: omega must be positive");
    if (omega == 1.0) return p;
    const double w2 = omega * omega, w3 = w2 * omega;
    InitialProfile q;
    q.grid = SpatialGrid(p.grid.half_width * w2, p.grid.node_count);
    q.epsilon0 = p.epsilon0;
    q.tail_tol = p.tail_tol;
    q.analytic = p.analytic;
    q.derivative_method = p.derivative_method;
    const std::size_t n = p.grid.node_count;
    q.u0.resize(n);
    q.u0_x.resize(n);
    q.u0_xx.resize(n);
    q.m0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // scaled node w2 * x_i lands exactly on q's node i
        q.u0[i] = w3 * p.u0[i];
        q.u0_x[i] = omega * p.u0_x[i];
        q.u0_xx[i] = p.u0_xx[i] / omega;
        q.m0[i] = p.m0[i] / omega;
    }
    if (p.analytic) {
        q.terms = p.terms;
        for (auto& t : q.terms) {
            t.amplitude *= w3;
            t.width *= w2;
            t.center *= w2;
        }
    }
    detail::check_invariants(q);
    q.finalize_evaluators();
    return q;
}

} // namespace hslab
