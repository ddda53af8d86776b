#pragma once

// Classification of 1-D profiles against the family {power solution} u {rescaled M=1 solution}.

#include <cmath>
#include <limits>
#include <string_view>

#include "core_profiles.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "profile.hpp"
#include "singular_ode.hpp"

namespace halfspace {

enum class SolutionClass { power, linear_growth, unclassified };

inline std::string_view to_string(SolutionClass c) {
    switch (c) {
        case SolutionClass::power: return "power";
        case SolutionClass::linear_growth: return "linear_growth";
        case SolutionClass::unclassified: return "unclassified";
    }
    return "?";
}

/// The canonical member M = 1 for one gamma.
struct Family {
    GammaParam gamma;
    Profile1D canonical;

    static Family make(const GammaParam& g, const ShootSpec& spec = {}) { return {g, solve_prescribed_slope(g, 1.0, spec).profile}; }
};

struct Classification {
    SolutionClass cls = SolutionClass::unclassified;
    double slope = 0.0;                                                   // limit slope of the input
    double power_discrepancy = std::numeric_limits<double>::infinity();  // sup-relative on (0, span]
    double family_discrepancy = std::numeric_limits<double>::infinity(); // against the rescaled canonical
    double lambda = 0.0;                                                  // scaling applied to the canonical

    [[nodiscard]] double discrepancy() const { return std::min(power_discrepancy, family_discrepancy); }
};

struct ClassifyOptions {
    double span = 10.0;  // compare on (0, span]
    double tol = 1e-5;   // sup-relative acceptance
};

/// Computes the limit slope of p and compares p with both candidate classes. A candidate whose
/// span does not cover the comparison window is skipped.
inline Classification classify(const Profile1D& p, const Family& fam, const ClassifyOptions& o = {}) {
    validate(p);
    if (p.gamma.gamma != fam.gamma.gamma) throw ConfigError("profile and family have different gamma");
    if (!(o.span > 0.0) || !(o.tol > 0.0)) throw ConfigError("classification needs span > 0 and tol > 0");
    Classification c;
    c.slope = limit_slope(p);
    const double hi = std::min(o.span, p.t_max());

    double worst = 0.0;
    for (double t : p.grid) {
        if (t <= 0.0 || t > hi) continue;
        const double a = evaluate(p, t).v, b = eval_power(p.gamma, t).value;
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
    }
    c.power_discrepancy = worst;

    if (c.slope > 0.0) {
        const double lam = std::pow(c.slope, (p.gamma.gamma + 1.0) / (p.gamma.gamma - 1.0));
        if (std::isfinite(lam) && lam > 0.0 && fam.canonical.t_max() / lam >= hi) {
            c.lambda = lam;
            c.family_discrepancy = sup_rel_discrepancy(p, rescale(fam.canonical, lam), 0.0, hi);
        }
    }
    if (c.discrepancy() <= o.tol)
        c.cls = c.power_discrepancy <= c.family_discrepancy ? SolutionClass::power : SolutionClass::linear_growth;
    return c;
}

}  // namespace halfspace
