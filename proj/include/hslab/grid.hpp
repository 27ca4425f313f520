#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hslab/errors.hpp"

namespace hslab {

/// Uniform spatial grid on [-L, L] with N nodes (endpoints included).
struct SpatialGrid {
    double half_width = 0.0; // L
    std::size_t node_count = 0;
    std::vector<double> nodes;

    SpatialGrid() = default;

    SpatialGrid(double half_width_, std::size_t node_count_)
        : half_width(half_width_), node_count(node_count_) {
        if (half_width <= 0.0)
            throw ConfigError("SpatialGrid: half_width must be positive");
        if (node_count < 256)
            throw ConfigError("SpatialGrid: need at least 256 nodes");
        nodes.resize(node_count);
        const double h = spacing();
        for (std::size_t i = 0; i < node_count; ++i)
            nodes[i] = -half_width + h * static_cast<double>(i);
        nodes.back() = half_width; // kill accumulated rounding at the end node
    }

    double spacing() const { return 2.0 * half_width / static_cast<double>(node_count - 1); }

    double front() const { return nodes.front(); }
    double back() const { return nodes.back(); }

    /// Index of the largest node <= x, clamped to [0, N-2].
    std::size_t cell_of(double x) const {
        const double h = spacing();
        double f = (x - nodes.front()) / h;
        if (f < 0.0) f = 0.0;
        auto i = static_cast<std::size_t>(f);
        if (i > node_count - 2) i = node_count - 2;
        return i;
    }
};

} // namespace hslab
