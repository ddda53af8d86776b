#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"

namespace halfspace {

enum class ProfileKind { power, linear_growth, raw };

inline std::string_view to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::power: return "power";
        case ProfileKind::linear_growth: return "linear_growth";
        case ProfileKind::raw: return "raw";
    }
    return "raw";
}

inline ProfileKind profile_kind_from(std::string_view s) {
    if (s == "power") return ProfileKind::power;
    if (s == "linear_growth") return ProfileKind::linear_growth;
    if (s == "raw") return ProfileKind::raw;
    throw ConfigError("unknown profile kind '" + std::string(s) + "'");
}

/// A sampled 1-D solution t -> v(t) with derivatives stored at integrator accuracy.
///
/// When the grid starts at t = 0 the first sample is the boundary point
/// (v = 0, v' = +inf); the derivative blow-up is kept as an explicit infinity.
struct Profile1D {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> derivs;
    GammaParam gamma;
    ProfileKind kind = ProfileKind::raw;
    std::optional<double> limit_slope;

    [[nodiscard]] std::size_t size() const { return grid.size(); }
    [[nodiscard]] bool empty() const { return grid.empty(); }
    [[nodiscard]] bool starts_at_origin() const { return !grid.empty() && grid.front() == 0.0; }
    [[nodiscard]] double t_min() const { return grid.front(); }
    [[nodiscard]] double t_max() const { return grid.back(); }
};

/// Throws InvariantViolation unless the profile's structural invariants hold.
inline void validate(const Profile1D& p) {
    if (p.grid.size() != p.values.size() || p.grid.size() != p.derivs.size())
        throw InvariantViolation("profile arrays have mismatched lengths");
    if (p.grid.empty()) throw InvariantViolation("profile is empty");
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        if (!std::isfinite(p.grid[i]) || p.grid[i] < 0.0)
            throw InvariantViolation("profile grid value out of range at index " + std::to_string(i));
        if (i > 0 && !(p.grid[i] > p.grid[i - 1]))
            throw InvariantViolation("profile grid not strictly increasing at index " + std::to_string(i));
        if (p.grid[i] > 0.0 && !(p.values[i] > 0.0))
            throw InvariantViolation("profile value not positive at t=" + std::to_string(p.grid[i]));
    }
    if (p.starts_at_origin() && p.values.front() != 0.0)
        throw InvariantViolation("profile starting at t=0 must have v(0)=0");
}

struct ProfileSample {
    double v;
    double dv;
};

namespace detail {

inline ProfileSample hermite(double t0, double t1, double v0, double v1, double d0, double d1, double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    const double v = h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1;
    const double g00 = (6 * s2 - 6 * s) / h;
    const double g10 = 3 * s2 - 4 * s + 1;
    const double g01 = (-6 * s2 + 6 * s) / h;
    const double g11 = 3 * s2 - 2 * s;
    const double dv = g00 * v0 + g10 * d0 + g01 * v1 + g11 * d1;
    return {v, dv};
}

}  // namespace detail

/// Evaluates the profile at t inside its span.
///
/// Interior intervals use cubic Hermite interpolation on (v, v'). Between the
/// origin and the first positive sample the two-term form C t^a + b t^s is used,
/// with b matched to the first positive sample.
inline ProfileSample evaluate(const Profile1D& p, double t) {
    if (p.empty()) throw ConfigError("cannot evaluate an empty profile");
    if (t < p.t_min() || t > p.t_max() || std::isnan(t))
        throw ConfigError("t=" + std::to_string(t) + " outside profile span [" + std::to_string(p.t_min()) +
                          ", " + std::to_string(p.t_max()) + "]");
    const auto it = std::lower_bound(p.grid.begin(), p.grid.end(), t);
    auto k = static_cast<std::size_t>(it - p.grid.begin());
    if (k < p.size() && p.grid[k] == t) return {p.values[k], p.derivs[k]};
    // p.grid[k-1] < t < p.grid[k]
    if (k == 1 && p.starts_at_origin()) {
        const GammaParam& g = p.gamma;
        const double a = g.alpha_pow;
        const double s = g.indicial();
        const double t1 = p.grid[1];
        const double b = (p.values[1] - g.c_gamma * std::pow(t1, a)) / std::pow(t1, s);
        return {g.c_gamma * std::pow(t, a) + b * std::pow(t, s),
                g.c_gamma * a * std::pow(t, a - 1.0) + b * s * std::pow(t, s - 1.0)};
    }
    return detail::hermite(p.grid[k - 1], p.grid[k], p.values[k - 1], p.values[k], p.derivs[k - 1], p.derivs[k], t);
}

/// Sup over the union of both grids in (t_lo, t_hi] of |a - b| / max(|a|, |b|).
inline double sup_rel_discrepancy(const Profile1D& a, const Profile1D& b, double t_lo, double t_hi) {
    const double lo = std::max({t_lo, a.t_min(), b.t_min()});
    const double hi = std::min({t_hi, a.t_max(), b.t_max()});
    if (!(hi > lo)) throw ConfigError("profiles have no overlapping span to compare");
    double worst = 0.0;
    auto scan = [&](const Profile1D& src) {
        for (double t : src.grid) {
            if (t <= lo || t > hi || t <= 0.0) continue;
            const double va = evaluate(a, t).v;
            const double vb = evaluate(b, t).v;
            const double scale = std::max(std::abs(va), std::abs(vb));
            if (scale > 0.0) worst = std::max(worst, std::abs(va - vb) / scale);
        }
    };
    scan(a);
    scan(b);
    return worst;
}

/// Keeps samples up to and including the first grid point >= t_max.
inline Profile1D truncate(const Profile1D& p, double t_max) {
    Profile1D out = p;
    const auto it = std::lower_bound(p.grid.begin(), p.grid.end(), t_max);
    const auto n = std::min(p.size(), static_cast<std::size_t>(it - p.grid.begin()) + 1);
    out.grid.resize(n);
    out.values.resize(n);
    out.derivs.resize(n);
    return out;
}

}  // namespace halfspace
