#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"

namespace halfspace {

/// Uniform square grid on [-width/2, width/2] x [0, height]; node (i, j) sits at
/// (-width/2 + i h, j h) for 0 <= i <= nx, 0 <= j <= nz.
struct Grid2D {
    double width = 0.0;
    double height = 0.0;
    double h = 0.0;
    std::size_t nx = 0;
    std::size_t nz = 0;

    [[nodiscard]] double x(std::size_t i) const { return -0.5 * width + static_cast<double>(i) * h; }
    [[nodiscard]] double z(std::size_t j) const { return static_cast<double>(j) * h; }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const { return j * (nx + 1) + i; }
    [[nodiscard]] std::size_t nodes() const { return (nx + 1) * (nz + 1); }
    [[nodiscard]] bool on_boundary(std::size_t i, std::size_t j) const {
        return i == 0 || i == nx || j == 0 || j == nz;
    }
};

namespace detail {

inline std::size_t cells(double length, double h, const char* what) {
    const double q = length / h;
    const double r = std::round(q);
    if (!(r >= 1.0) || std::abs(q - r) > 1e-9 * std::max(1.0, r))
        throw ConfigError(std::string(what) + " " + std::to_string(length) + " is not a multiple of h=" +
                          std::to_string(h) + " (ratio " + std::to_string(q) + ")");
    return static_cast<std::size_t>(r);
}

}  // namespace detail

inline Grid2D build_grid(double width, double height, double h) {
    if (!(width > 0.0) || !(height > 0.0) || !(h > 0.0) || !std::isfinite(width) || !std::isfinite(height))
        throw ConfigError("grid dimensions and spacing must be positive");
    Grid2D g;
    g.width = width;
    g.height = height;
    g.h = h;
    g.nx = detail::cells(width, h, "width");
    g.nz = detail::cells(height, h, "height");
    if (g.nx < 8 || g.nz < 8) throw ConfigError("grid needs at least 8 cells per direction");
    return g;
}

enum class BoundaryMode { oned_profile, perturbed, custom };

inline std::string_view to_string(BoundaryMode m) {
    switch (m) {
        case BoundaryMode::oned_profile: return "oned_profile";
        case BoundaryMode::perturbed: return "perturbed";
        case BoundaryMode::custom: return "custom";
    }
    return "custom";
}

inline BoundaryMode boundary_mode_from(std::string_view s) {
    if (s == "oned_profile") return BoundaryMode::oned_profile;
    if (s == "perturbed") return BoundaryMode::perturbed;
    if (s == "custom") return BoundaryMode::custom;
    throw ConfigError("unknown boundary mode '" + std::string(s) + "'");
}

/// Nodal values, row-major in j (values[j*(nx+1) + i]); the bottom row is the Dirichlet zero.
struct Field2D {
    Grid2D grid;
    std::vector<double> values;
    GammaParam gamma;
    BoundaryMode boundary_mode = BoundaryMode::custom;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
    double& at(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
};

inline void validate(const Field2D& f) {
    if (f.values.size() != f.grid.nodes()) throw InvariantViolation("field size does not match its grid");
    for (std::size_t i = 0; i <= f.grid.nx; ++i)
        if (f.at(i, 0) != 0.0) throw InvariantViolation("field bottom row must be exactly 0");
    for (std::size_t j = 1; j <= f.grid.nz; ++j)
        for (std::size_t i = 0; i <= f.grid.nx; ++i)
            if (!(f.at(i, j) > 0.0))
                throw InvariantViolation("field value not positive at node (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
}

}  // namespace halfspace
