#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace hslab {

/// Cumulative integral from the right end: out[i] = integral of f over [x_i, x_{N-1}],
/// uniform spacing h, 4th-order (cubic Newton-Cotes per interval).
inline std::vector<double> cumulative_from_right(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 4) {
        for (std::size_t i = n; i-- > 1;)
            out[i - 1] = out[i] + 0.5 * h * (f[i - 1] + f[i]);
        return out;
    }
    auto panel = [&](std::size_t i) {
        // integral over [x_i, x_{i+1}]
        if (i == 0)
            return h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
        if (i == n - 2)
            return h * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) / 24.0;
        return h * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]) / 24.0;
    };
    for (std::size_t i = n - 1; i-- > 0;)
        out[i] = out[i + 1] + panel(i);
    return out;
}

/// Integral of uniformly sampled f over the full range, 4th order.
inline double integrate_samples(const std::vector<double>& f, double h) {
    return cumulative_from_right(f, h).front();
}

namespace detail {
// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> gk_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> gk_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F, typename R>
void gk15(const F& f, double a, double b, R& kronrod, double& err) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    R resk{}, resg{};
    const R fc = f(c);
    resk = gk_wk[7] * fc;
    resg = gk_wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const R fv = f(c - hw * gk_nodes[j]) + f(c + hw * gk_nodes[j]);
        resk += gk_wk[j] * fv;
        if (j % 2 == 1) resg += gk_wg[j / 2] * fv;
    }
    kronrod = hw * resk;
    err = std::abs(hw) * std::abs(resk - resg);
}
} // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b]: worst-segment-first
/// refinement against a global error budget, capped at max_segments so it
/// always terminates. Result type follows f's return type (double or
/// complex<double>).
template <typename F>
auto integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-10,
                        double abs_tol = 1e-14, std::size_t max_segments = 2048)
    -> decltype(f(a)) {
    using R = decltype(f(a));
    struct Seg {
        double a, b, err;
        R val;
    };
    std::vector<Seg> segs;
    segs.reserve(256);
    {
        Seg s{a, b, 0.0, R{}};
        detail::gk15(f, a, b, s.val, s.err);
        segs.push_back(s);
    }
    for (;;) {
        R total{};
        double total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            total_err += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol || segs.size() >= max_segments ||
            segs[worst].err <= 1e-300) {
            return total;
        }
        const Seg w = segs[worst];
        const double m = 0.5 * (w.a + w.b);
        Seg l{w.a, m, 0.0, R{}}, r{m, w.b, 0.0, R{}};
        detail::gk15(f, l.a, l.b, l.val, l.err);
        detail::gk15(f, r.a, r.b, r.val, r.err);
        segs[worst] = l;
        segs.push_back(r);
    }
}

/// Adaptive Simpson. Kept deliberately different from integrate_adaptive so the
/// two can serve as independent cross-checks of one another. The initial
/// 37-panel split is asymmetric on purpose: a symmetric first panel would
/// report zero for odd integrands and stop immediately.
template <typename F>
auto integrate_simpson(const F& f, double a, double b, double tol = 1e-10,
                       int max_depth = 32) -> decltype(f(a)) {
    using R = decltype(f(a));
    std::function<R(double, double, R, R, R, R, double, int)> rec =
        [&](double lo, double hi, R flo, R fmid, R fhi, R whole, double eps, int depth) -> R {
        const double m = 0.5 * (lo + hi);
        const R fl = f(0.5 * (lo + m)), fr = f(0.5 * (m + hi));
        const R left = (hi - lo) / 12.0 * (flo + 4.0 * fl + fmid);
        const R right = (hi - lo) / 12.0 * (fmid + 4.0 * fr + fhi);
        if (depth >= max_depth || std::abs(left + right - whole) <= 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, m, flo, fl, fmid, left, 0.5 * eps, depth + 1) +
               rec(m, hi, fmid, fr, fhi, right, 0.5 * eps, depth + 1);
    };
    constexpr int panels = 37;
    R total{};
    for (int i = 0; i < panels; ++i) {
        const double lo = a + (b - a) * i / static_cast<double>(panels);
        const double hi = a + (b - a) * (i + 1) / static_cast<double>(panels);
        const R flo = f(lo), fhi = f(hi), fm = f(0.5 * (lo + hi));
        const R whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        total += rec(lo, hi, flo, fm, fhi, whole, tol / panels, 0);
    }
    return total;
}

} // namespace hslab
