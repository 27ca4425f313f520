#pragma once

#include <cmath>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/grid.hpp"
#include "hslab/interpolation.hpp"
#include "hslab/profile.hpp"
#include "hslab/quadrature.hpp"

namespace hslab {

/// The slow variable y(x) = x - integral_x^L (sqrt(m+1) - 1) ds together with
/// its monotone inverse. dy/dx = sqrt(m+1) > 0, so both directions are
/// single-valued.
struct CoordinateMap {
    SpatialGrid grid;
    std::vector<double> y_of_x;
    double total_shift = 0.0; // integral over the whole grid of (sqrt(m+1) - 1)

    double y_at(double x) const { return forward_(x); }
    double x_at(double y) const { return inverse_(y); }
    double y_min() const { return y_of_x.front(); }
    double y_max() const { return y_of_x.back(); }

    MonotoneInterpolant forward_, inverse_;
};

inline CoordinateMap coordinate_map(const std::vector<double>& m, const SpatialGrid& grid) {
    if (m.size() != grid.node_count) throw ConfigError("coordinate_map: size mismatch");
    CoordinateMap cm;
    cm.grid = grid;
    std::vector<double> integrand(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] + 1.0 <= 0.0)
            throw HypothesisError("coordinate_map: m + 1 <= 0, map would not be monotone");
        integrand[i] = sqrt1pm1(m[i]);
    }
    const auto tail = cumulative_from_right(integrand, grid.spacing());
    cm.total_shift = tail.front();
    cm.y_of_x.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) cm.y_of_x[i] = grid.nodes[i] - tail[i];
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
        if (!(cm.y_of_x[i + 1] > cm.y_of_x[i]))
            throw ValidationError("coordinate_map: y table not strictly increasing (internal fault)");
    cm.forward_ = MonotoneInterpolant(grid.nodes, cm.y_of_x);
    cm.inverse_ = MonotoneInterpolant(cm.y_of_x, grid.nodes);
    return cm;
}

inline CoordinateMap coordinate_map(const InitialProfile& p) {
    return coordinate_map(p.m0, p.grid);
}

} // namespace hslab
