#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"

namespace halfspace {

/// C_gamma = ((gamma+1)^2 / (2 gamma - 2))^(1/(gamma+1)), the amplitude of the
/// power solution C t^(2/(gamma+1)).
inline double c_gamma(double gamma) {
    if (!(gamma > 1.0) || !std::isfinite(gamma))
        throw ConfigError("singular exponent out of range: gamma must satisfy gamma > 1 (got " +
                          std::to_string(gamma) + ")");
    const double gp1 = gamma + 1.0;
    const double rhs = gp1 * gp1;
    const double k = 2.0 * gamma - 2.0;
    double c = std::exp((2.0 * std::log(gp1) - std::log(k)) / gp1);
    // one Newton step on c^(gamma+1) k - (gamma+1)^2 = 0
    const double r = std::pow(c, gp1) * k / rhs;
    c -= c * (1.0 - 1.0 / r) / gp1;
    return c;
}

/// The singularity exponent together with the quantities every module derives from it.
struct GammaParam {
    double gamma = 2.0;
    double alpha_pow = 2.0 / 3.0;   // 2/(gamma+1)
    double grad_exp = -1.0 / 3.0;   // (1-gamma)/(gamma+1) = alpha_pow - 1
    double c_gamma = 0.0;

    static GammaParam make(double gamma) {
        GammaParam g;
        g.c_gamma = halfspace::c_gamma(gamma);  // validates
        g.gamma = gamma;
        g.alpha_pow = 2.0 / (gamma + 1.0);
        g.grad_exp = (1.0 - gamma) / (gamma + 1.0);
        return g;
    }

    /// Growing root of s(s-1) = 2 gamma (gamma-1)/(gamma+1)^2; equals 2 - alpha_pow.
    [[nodiscard]] double indicial() const { return 2.0 * gamma / (gamma + 1.0); }

    /// Exponent by which far-field slopes scale under t -> lambda t: (gamma-1)/(gamma+1).
    [[nodiscard]] double slope_exp() const { return 1.0 - alpha_pow; }
};

}  // namespace halfspace
