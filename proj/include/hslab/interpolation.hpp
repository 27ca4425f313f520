#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hslab/errors.hpp"

namespace hslab {

/// Cubic spline with not-a-knot ends on strictly increasing (possibly
/// non-uniform) nodes. Not-a-knot keeps 4th-order accuracy up to the
/// boundary, which matters because several tables are evaluated exactly at
/// their end nodes.
class CubicSpline {
public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n != y_.size() || n < 4)
            throw ConfigError("CubicSpline: need >= 4 nodes");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i + 1] > x_[i]))
                throw ConfigError("CubicSpline: nodes must be strictly increasing");
        build();
    }

    double operator()(double x) const {
        const std::size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double x) const {
        const std::size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_; // m_: second derivatives at nodes

    std::size_t locate(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
        if (i > x_.size() - 2) i = x_.size() - 2;
        return i;
    }

    void build() {
        const std::size_t n = x_.size();
        std::vector<double> h(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

        // Thomas solve for interior moments with not-a-knot rows folded in.
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            a[i] = h[i - 1] / 6.0;
            b[i] = (h[i - 1] + h[i]) / 3.0;
            c[i] = h[i] / 6.0;
            d[i] = (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
        }
        // not-a-knot: M0 = ((h0+h1) M1 - h0 M2) / h1, mirrored on the right
        b[1] += a[1] * (h[0] + h[1]) / h[1];
        c[1] -= a[1] * h[0] / h[1];
        a[1] = 0.0;
        const std::size_t m = n - 2;
        b[m] += c[m] * (h[n - 2] + h[n - 3]) / h[n - 3];
        a[m] -= c[m] * h[n - 2] / h[n - 3];
        c[m] = 0.0;

        std::vector<double> cp(n, 0.0), dp(n, 0.0);
        cp[1] = c[1] / b[1];
        dp[1] = d[1] / b[1];
        for (std::size_t i = 2; i <= m; ++i) {
            const double denom = b[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / denom;
            dp[i] = (d[i] - a[i] * dp[i - 1]) / denom;
        }
        m_.assign(n, 0.0);
        m_[m] = dp[m];
        for (std::size_t i = m; i-- > 1;) m_[i] = dp[i] - cp[i] * m_[i + 1];
        m_[0] = ((h[0] + h[1]) * m_[1] - h[0] * m_[2]) / h[1];
        m_[n - 1] = ((h[n - 2] + h[n - 3]) * m_[n - 2] - h[n - 2] * m_[n - 3]) / h[n - 3];
    }
};

/// Spline interpolation of complex samples (independent Re/Im splines).
class ComplexSpline {
public:
    ComplexSpline() = default;
    ComplexSpline(const std::vector<double>& x, const std::vector<std::complex<double>>& y) {
        std::vector<double> re(y.size()), im(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            re[i] = y[i].real();
            im[i] = y[i].imag();
        }
        re_ = CubicSpline(x, re);
        im_ = CubicSpline(x, im);
    }
    std::complex<double> operator()(double x) const { return {re_(x), im_(x)}; }

private:
    CubicSpline re_, im_;
};

/// Monotone cubic Hermite interpolant (Fritsch-Carlson). Used for inverse
/// coordinate tables where overshoot must not break monotonicity.
class MonotoneInterpolant {
public:
    MonotoneInterpolant() = default;

    MonotoneInterpolant(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n != y_.size() || n < 2)
            throw ConfigError("MonotoneInterpolant: need >= 2 nodes");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i + 1] > x_[i]))
                throw ConfigError("MonotoneInterpolant: nodes must be strictly increasing");
        build();
    }

    double operator()(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
        if (i > x_.size() - 2) i = x_.size() - 2;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_, y_, d_;

    void build() {
        const std::size_t n = x_.size();
        std::vector<double> h(n - 1), s(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            s[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_.assign(n, 0.0);
        d_[0] = s[0];
        d_[n - 1] = s[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (s[i - 1] * s[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
        }
        // clamp endpoint slopes (Fritsch-Carlson)
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (s[i] == 0.0) continue;
            const double al = d_[i] / s[i], be = d_[i + 1] / s[i];
            const double r = al * al + be * be;
            if (r > 9.0) {
                const double tau = 3.0 / std::sqrt(r);
                d_[i] = tau * al * s[i];
                d_[i + 1] = tau * be * s[i];
            }
        }
    }
};

/// Local 4-point Lagrange interpolation on a uniform grid (cheap per-query).
inline double lagrange4(const std::vector<double>& x, const std::vector<double>& y, double xq) {
    const std::size_t n = x.size();
    const double h = x[1] - x[0];
    auto j = static_cast<std::ptrdiff_t>(std::floor((xq - x[0]) / h));
    std::ptrdiff_t i0 = j - 1;
    i0 = std::clamp<std::ptrdiff_t>(i0, 0, static_cast<std::ptrdiff_t>(n) - 4);
    double res = 0.0;
    for (std::ptrdiff_t m = 0; m < 4; ++m) {
        double lm = 1.0;
        for (std::ptrdiff_t l = 0; l < 4; ++l)
            if (l != m) lm *= (xq - x[i0 + l]) / (x[i0 + m] - x[i0 + l]);
        res += lm * y[i0 + m];
    }
    return res;
}

} // namespace hslab
