#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "profile.hpp"

namespace halfspace {

struct PowerValue {
    double value;
    double deriv;
    bool deriv_infinite;  // set at t = 0, where the slope blows up
};

/// The power solution C t^(2/(gamma+1)) and its derivative.
inline PowerValue eval_power(const GammaParam& g, double t) {
    if (!(t >= 0.0)) throw ConfigError("eval_power requires t >= 0");
    if (t == 0.0) return {0.0, std::numeric_limits<double>::infinity(), true};
    const double v = g.c_gamma * std::pow(t, g.alpha_pow);
    return {v, g.c_gamma * g.alpha_pow * std::pow(t, g.grad_exp), false};
}

/// w(t) = C (t + t^(2/(gamma+1))): a supersolution above the power solution with w' -> C.
inline double eval_supersolution_w(const GammaParam& g, double t) {
    if (!(t >= 0.0)) throw ConfigError("eval_supersolution_w requires t >= 0");
    return g.c_gamma * (t + std::pow(t, g.alpha_pow));
}

inline double eval_supersolution_w_deriv(const GammaParam& g, double t) {
    if (!(t > 0.0)) return std::numeric_limits<double>::infinity();
    return g.c_gamma * (1.0 + g.alpha_pow * std::pow(t, g.grad_exp));
}

/// Parameters of the translated barrier family w_{beta,eps}(x) = beta * u_1d(x + eps).
struct BarrierSpec {
    double beta = 1.0;
    double eps = 0.0;

    static BarrierSpec make(double beta, double eps = 0.0) {
        if (!(beta >= 1.0)) throw ConfigError("barrier requires beta >= 1");
        if (!(eps >= 0.0)) throw ConfigError("barrier requires eps >= 0");
        return {beta, eps};
    }
};

/// beta * C (x + eps)^(2/(gamma+1)); a strict supersolution of -w'' = w^-gamma when beta > 1.
inline double eval_barrier_w_beta(const GammaParam& g, const BarrierSpec& b, double x) {
    if (!(x >= 0.0)) throw ConfigError("eval_barrier_w_beta requires x >= 0");
    return b.beta * eval_power(g, x + b.eps).value;
}

/// The strip {0 < x_N < height} on which the solution is assumed bounded by theta.
struct StripSpec {
    double height = 1.0;
    std::optional<double> theta;

    static StripSpec make(double height, std::optional<double> theta = std::nullopt) {
        if (!(height > 0.0)) throw ConfigError("strip height must be positive");
        if (theta && !(*theta > 0.0)) throw ConfigError("strip bound theta must be positive");
        return {height, theta};
    }
};

/// E = (v')^2/2 - v^(1-gamma)/(gamma-1), conserved along solutions of -v'' = v^-gamma.
inline double first_integral(const GammaParam& g, double v, double dv) {
    if (!(v > 0.0)) throw ConfigError("first_integral requires v > 0");
    return 0.5 * dv * dv - std::pow(v, 1.0 - g.gamma) / (g.gamma - 1.0);
}

/// The scaling t -> lambda^alpha v(lambda t) with alpha = -2/(gamma+1).
struct ScalingMap {
    double lambda = 1.0;
    double alpha = -2.0 / 3.0;

    static ScalingMap make(const GammaParam& g, double lambda) {
        if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("scaling requires lambda > 0");
        return {lambda, -g.alpha_pow};
    }

    /// Applying *this and then `next` is the single map with lambda product.
    [[nodiscard]] ScalingMap then(const ScalingMap& next) const { return {lambda * next.lambda, alpha}; }

    /// Factor applied to far-field slopes: lambda^((gamma-1)/(gamma+1)).
    [[nodiscard]] double slope_factor() const { return std::pow(lambda, 1.0 + alpha); }
};

/// t -> lambda^(-2/(gamma+1)) p(lambda t), resampled onto the transformed grid t_i / lambda.
inline Profile1D rescale(const Profile1D& p, double lambda) {
    const ScalingMap m = ScalingMap::make(p.gamma, lambda);
    if (lambda == 1.0) return p;
    const double vf = std::pow(lambda, m.alpha);
    const double df = std::pow(lambda, 1.0 + m.alpha);
    Profile1D out;
    out.gamma = p.gamma;
    out.kind = p.kind;
    out.grid.reserve(p.size());
    out.values.reserve(p.size());
    out.derivs.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.grid.push_back(p.grid[i] / lambda);
        out.values.push_back(vf * p.values[i]);
        out.derivs.push_back(df * p.derivs[i]);
    }
    if (p.limit_slope) out.limit_slope = *p.limit_slope * df;
    return out;
}

/// The power solution sampled at the given abscissae.
inline Profile1D sample_power(const GammaParam& g, const std::vector<double>& ts) {
    Profile1D p;
    p.gamma = g;
    p.kind = ProfileKind::power;
    p.limit_slope = 0.0;
    for (double t : ts) {
        const auto pv = eval_power(g, t);
        p.grid.push_back(t);
        p.values.push_back(pv.value);
        p.derivs.push_back(pv.deriv);
    }
    return p;
}

/// The supersolution w sampled at the given abscissae (kind raw: it does not solve the ODE).
inline Profile1D sample_supersolution_w(const GammaParam& g, const std::vector<double>& ts) {
    Profile1D p;
    p.gamma = g;
    p.kind = ProfileKind::raw;
    for (double t : ts) {
        p.grid.push_back(t);
        p.values.push_back(eval_supersolution_w(g, t));
        p.derivs.push_back(eval_supersolution_w_deriv(g, t));
    }
    return p;
}

inline std::vector<double> uniform_grid(double t_max, std::size_t n) {
    std::vector<double> ts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ts[i] = t_max * static_cast<double>(i) / static_cast<double>(n);
    ts[n] = t_max;
    return ts;
}

/// n+1 log-spaced points from lo to hi (both > 0), endpoints exact.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> ts(n + 1);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i <= n; ++i) ts[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
    ts.front() = lo;
    ts.back() = hi;
    return ts;
}

}  // namespace halfspace
