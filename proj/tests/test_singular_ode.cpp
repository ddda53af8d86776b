#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include <halfspace/singular_ode.hpp>

#include "oracles.hpp"

using namespace halfspace;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const ShootResult& cached_solution(double gamma, double slope) {
    static std::map<std::pair<double, double>, ShootResult> cache;
    const auto key = std::pair{gamma, slope};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, solve_prescribed_slope(GammaParam::make(gamma), slope, {})).first;
    return it->second;
}

}  // namespace

TEST(Indicial, MatchesTheRadicalForm) {
    for (const auto& [g, s] : oracle::indicial) EXPECT_LE(rel(indicial_exponent(GammaParam::make(g)), s), 1e-15);
    EXPECT_LE(rel(indicial_exponent(GammaParam::make(1.0 + 1e-6)), oracle::indicial_near_one), 1e-12);
}

TEST(Indicial, SatisfiesTheIndicialEquation) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(1.0001, 40.0);
    for (int k = 0; k < 500; ++k) {
        const auto g = GammaParam::make(d(rng));
        const double s = indicial_exponent(g);
        const double gm = g.gamma;
        EXPECT_NEAR(s * (s - 1.0), 2.0 * gm * (gm - 1.0) / ((gm + 1.0) * (gm + 1.0)), 1e-14);
        EXPECT_GT(s, 1.0);
        EXPECT_GT(s, g.alpha_pow);
    }
}

TEST(LocalExpansion, ZeroCoefficientIsThePowerSolution) {
    const auto g = GammaParam::make(2.0);
    const auto e = local_expansion(g, 0.0, 1e-3);
    const auto p = eval_power(g, 1e-3);
    EXPECT_EQ(e.state.v, p.value);
    EXPECT_DOUBLE_EQ(e.state.dv, p.deriv);
    EXPECT_EQ(e.correction_ratio, 0.0);
}

TEST(LocalExpansion, CorrectionRatio) {
    const auto g = GammaParam::make(3.0);
    const auto e = local_expansion(g, 1.0, 1e-4);
    EXPECT_LE(rel(e.correction_ratio, 1e-4 / std::sqrt(2.0)), 1e-12);
    EXPECT_THROW(local_expansion(g, 1.0, 0.5), ConfigError);
    EXPECT_THROW(local_expansion(g, 1.0, 0.0), ConfigError);
}

TEST(LocalExpansion, ResidualDecaysAtTheSecondOrderRate) {
    // The first-order terms of the series cancel, so the relative residual scales like
    // (b t^(s-a)/C)^2 and halving t reduces it by 2^(-2(s-a)).
    for (double gm : {1.5, 2.0, 3.0}) {
        const auto g = GammaParam::make(gm);
        const double span = indicial_exponent(g) - g.alpha_pow;
        double t = 1e-3;
        for (int k = 0; k < 4; ++k, t *= 0.5) {
            const double r1 = std::abs(local_expansion(g, 1.0, t).rel_residual);
            const double r2 = std::abs(local_expansion(g, 1.0, 0.5 * t).rel_residual);
            EXPECT_NEAR(r2 / r1, std::pow(2.0, -2.0 * span), 0.2 * std::pow(2.0, -2.0 * span)) << "gamma=" << gm;
        }
    }
}

TEST(DefaultStart, KeepsTheCorrectionSmall) {
    for (double gm : {1.5, 2.0, 5.0})
        for (double b : {1e-3, 1.0, 50.0}) {
            const auto g = GammaParam::make(gm);
            const double t = default_t_start(g, b);
            EXPECT_GE(t, 1e-12);
            EXPECT_LE(t, 0.1);
            EXPECT_LE(local_expansion(g, b, t).correction_ratio, 1e-3 * (1.0 + 1e-12));
        }
}

TEST(Integrate, PowerSolutionOracle) {
    for (double gm : {1.5, 2.0, 3.0}) {
        const auto g = GammaParam::make(gm);
        const auto p0 = eval_power(g, 0.01);
        const auto tr = integrate(g, {0.01, p0.value, p0.deriv}, 1e3, ShootSpec{});
        double err = 0.0;
        for (std::size_t i = 0; i < tr.profile.size(); ++i)
            err = std::max(err, rel(tr.profile.values[i], eval_power(g, tr.profile.grid[i]).value));
        EXPECT_LE(err, 1e-6) << "gamma=" << gm;
        EXPECT_LE(tr.energy_drift_abs, 1e-9) << "gamma=" << gm;
        EXPECT_EQ(tr.profile.grid.back(), 1e3);
    }
}

TEST(Integrate, ForwardDerivativeStrictlyDecreasing) {
    const auto g = GammaParam::make(2.0);
    const auto tr = integrate(g, {0.5, 1.0, 3.0}, 500.0, ShootSpec{});
    for (std::size_t i = 1; i < tr.profile.size(); ++i) EXPECT_LT(tr.profile.derivs[i], tr.profile.derivs[i - 1]);
}

TEST(Integrate, EnergyDriftBoundAlongRandomTrajectories) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uv(0.2, 5.0), ud(0.1, 4.0);
    ShootSpec spec;
    for (int k = 0; k < 20; ++k) {
        const auto g = GammaParam::make(1.5 + 0.25 * k);
        // E >= 0 keeps the trajectory alive for all t > 1
        const double v = uv(rng);
        const double d = std::sqrt(2.0 * std::pow(v, 1.0 - g.gamma) / (g.gamma - 1.0)) + ud(rng);
        SCOPED_TRACE("gamma=" + std::to_string(g.gamma) + " v=" + std::to_string(v) + " dv=" + std::to_string(d));
        const auto tr = integrate(g, {1.0, v, d}, 1e3, spec);
        const double e0 = first_integral(g, v, d);
        EXPECT_LE(tr.energy_drift_abs, spec.rel_tol * (1.0 + std::abs(e0)));
    }
}

TEST(Integrate, NegativeEnergyTrajectoryEndsAtAZero) {
    // E < 0: v reaches a maximum and returns to 0 in finite time; the integrator must not cross it.
    const auto g = GammaParam::make(2.0);
    EXPECT_THROW(integrate(g, {1.0, 1.0, 0.0}, 100.0, ShootSpec{}), NumericalError);
}

TEST(Integrate, BackwardStopsAtTheFloorWithoutCrossingZero) {
    const auto g = GammaParam::make(2.0);
    const auto tr = integrate(g, {1.0, 1.0, 3.0}, -1.0, ShootSpec{}, IntegrateOptions{1e-6});
    EXPECT_TRUE(tr.hit_floor);
    EXPECT_LE(tr.last.v, 1e-6);
    EXPECT_GT(tr.last.v, 0.0);
    for (double v : tr.profile.values) EXPECT_GT(v, 0.0);
}

TEST(Integrate, RejectsBadInput) {
    const auto g = GammaParam::make(2.0);
    EXPECT_THROW(integrate(g, {1.0, 0.0, 1.0}, 2.0, ShootSpec{}), ConfigError);
    EXPECT_THROW(integrate(g, {1.0, 1.0, 1.0}, 1.0, ShootSpec{}), ConfigError);
    ShootSpec tiny;
    tiny.max_steps = 5;
    EXPECT_THROW(integrate(g, {1e-3, 0.1, 10.0}, 1e4, tiny), NumericalError);
}

TEST(LimitSlope, PowerSolutionHasZeroSlope) {
    const auto g = GammaParam::make(2.0);
    EXPECT_EQ(limit_slope(sample_power(g, log_grid(1e-3, 1e3, 10))), 0.0);
}

TEST(LimitSlope, SeedAboveWExceedsC) {
    const auto g = GammaParam::make(2.0);
    const double v = 2.0 * eval_supersolution_w(g, 1.0);
    const auto tr = integrate(g, {1.0, v, 2.0 * eval_supersolution_w_deriv(g, 1.0)}, 1e4, ShootSpec{});
    const double L = limit_slope(tr.profile);
    EXPECT_GE(L, g.c_gamma);
    const double vT = tr.profile.values.back();
    EXPECT_LE(std::abs(L - tr.profile.derivs.back()), 10.0 * std::pow(vT, 1.0 - g.gamma) / (g.gamma - 1.0));
}

TEST(ExtendToZero, ProfileAlreadyAtTheOriginIsUnchanged) {
    const auto g = GammaParam::make(2.0);
    auto p = sample_power(g, uniform_grid(5.0, 50));
    const auto e = extend_to_zero(p, ShootSpec{});
    EXPECT_EQ(e.tau0, 0.0);
    EXPECT_EQ(e.profile.grid, p.grid);
    EXPECT_EQ(e.profile.values, p.values);
}

TEST(ExtendToZero, RejectsSeedsFailingTheTangentCondition) {
    // v'(1) = 2 w'(1) and v(1) = 2 w(1) give v'(t0) t0 / v(t0) = w'(1)/w(1) < 1.
    const auto g = GammaParam::make(2.0);
    const double v = 2.0 * eval_supersolution_w(g, 1.0), d = 2.0 * eval_supersolution_w_deriv(g, 1.0);
    const auto tr = integrate(g, {1.0, v, d}, 10.0, ShootSpec{});
    try {
        extend_to_zero(tr.profile, ShootSpec{});
        FAIL() << "expected rejection";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("0.833"), std::string::npos) << e.what();
    }
}

TEST(ExtendToZero, LocatesTheZeroAndMatchesTheExpansion) {
    for (double gm : {1.5, 2.0, 3.0}) {
        const auto g = GammaParam::make(gm);
        const auto s0 = seed_state(g, RouteASeed{});
        const auto tr = integrate(g, s0, 50.0, ShootSpec{});
        const auto e = extend_to_zero(tr.profile, ShootSpec{});
        EXPECT_GT(e.tau0, 0.0);
        EXPECT_LE(e.tau0, 1.0);
        EXPECT_GE(e.b_fit, 0.0);
        EXPECT_LE(e.fit_residual, 1e-4);
        EXPECT_EQ(e.profile.grid.front(), 0.0);
        EXPECT_EQ(e.profile.values.front(), 0.0);
        EXPECT_EQ(e.profile.kind, ProfileKind::linear_growth);
        // translated profile reproduces the seed state at t0 - tau0
        const auto at = evaluate(e.profile, 1.0 - e.tau0);
        EXPECT_LE(rel(at.v, s0.v), 1e-9);
        EXPECT_LE(rel(at.dv, s0.dv), 1e-9);
    }
}

TEST(RouteA, SeedsLieAboveW) {
    const auto g = GammaParam::make(2.0);
    for (double k : {2.0, 5.0}) {
        const auto s0 = seed_state(g, RouteASeed{1.0, k, 2.0});
        const auto tr = integrate(g, s0, 1e3, ShootSpec{});
        for (std::size_t i = 0; i < tr.profile.size(); ++i)
            EXPECT_GT(tr.profile.values[i], eval_supersolution_w(g, tr.profile.grid[i]));
    }
    EXPECT_THROW(seed_state(g, RouteASeed{1.0, 0.5, 2.0}), ConfigError);
}

TEST(PrescribedSlope, MatchesTheQuadratureOracle) {
    for (const auto& c : oracle::slope_profiles) {
        const auto& r = cached_solution(c.gamma, c.slope);
        EXPECT_LE(rel(*r.profile.limit_slope, c.slope), 1e-6);
        EXPECT_EQ(r.profile.values.front(), 0.0);
        EXPECT_EQ(r.profile.kind, ProfileKind::linear_growth);
        for (std::size_t k = 0; k < oracle::slope_t.size(); ++k) {
            EXPECT_LE(rel(evaluate(r.profile, oracle::slope_t[k]).v, c.v[k]), 5e-6)
                << "route A gamma=" << c.gamma << " M=" << c.slope << " t=" << oracle::slope_t[k];
            EXPECT_LE(rel(evaluate(r.route_b, oracle::slope_t[k]).v, c.v[k]), 5e-6)
                << "route B gamma=" << c.gamma << " M=" << c.slope << " t=" << oracle::slope_t[k];
        }
        EXPECT_LE(r.report.discrepancy_sup_rel, 1e-5);
    }
}

TEST(PrescribedSlope, RoutesAgreeForGammaFive) {
    for (double m : {0.5, 1.0, 4.0}) {
        const auto& r = cached_solution(5.0, m);
        EXPECT_LE(r.report.discrepancy_sup_rel, 1e-5) << "M=" << m;
    }
}

TEST(PrescribedSlope, ScalingConsistency) {
    const auto& one = cached_solution(2.0, 1.0);
    const auto& two = cached_solution(2.0, 2.0);
    const auto scaled = rescale(one.profile, 8.0);
    EXPECT_LE(sup_rel_discrepancy(scaled, two.profile, 0.0, 10.0), 1e-5);
}

TEST(PrescribedSlope, SeedIndependence) {
    const auto g = GammaParam::make(2.0);
    const auto a = solve_route_a(g, 1.0, ShootSpec{}, RouteASeed{1.0, 2.0, 2.0});
    const auto b = solve_route_a(g, 1.0, ShootSpec{}, RouteASeed{1.0, 5.0, 2.0});
    EXPECT_LE(sup_rel_discrepancy(a.profile, b.profile, 0.0, 10.0), 1e-5);
}

TEST(PrescribedSlope, ConcaveAndOrderedBySlope) {
    const auto& lo = cached_solution(2.0, 0.5);
    const auto& hi = cached_solution(2.0, 4.0);
    for (const auto* r : {&lo, &hi}) {
        const auto& p = r->profile;
        for (std::size_t i = 2; i < p.size(); ++i) EXPECT_LT(p.derivs[i], p.derivs[i - 1]);
    }
    for (double t : log_grid(1e-6, 1e3, 90)) EXPECT_LT(evaluate(lo.profile, t).v, evaluate(hi.profile, t).v) << t;
}

TEST(PrescribedSlope, DominatesThePowerSolution) {
    const auto g = GammaParam::make(2.0);
    const auto& r = cached_solution(2.0, 1.0);
    for (std::size_t i = 1; i < r.profile.size(); ++i)
        EXPECT_GT(r.profile.values[i], eval_power(g, r.profile.grid[i]).value * (1.0 - 1e-6));
}

TEST(PrescribedSlope, FirstIntegralEqualsHalfSlopeSquared) {
    // Near the origin both terms of E grow like v^(1-gamma) and cancel, so the error is measured
    // against that scale.
    for (double gm : {1.5, 2.0, 3.0}) {
        const auto& p = cached_solution(gm, 1.0).profile;
        const double e_inf = 0.5 * *p.limit_slope * *p.limit_slope;
        for (std::size_t i = 1; i < p.size(); ++i) {
            const double pot = std::pow(p.values[i], 1.0 - gm) / (gm - 1.0);
            EXPECT_LE(std::abs(first_integral(p.gamma, p.values[i], p.derivs[i]) - e_inf), 1e-8 * (1.0 + e_inf + pot))
                << "gamma=" << gm << " t=" << p.grid[i];
        }
    }
}

TEST(PrescribedSlope, ExtremeSlopesGoThroughTheScalingRoute) {
    const auto g = GammaParam::make(2.0);
    const auto r = solve_prescribed_slope(g, 5e3, ShootSpec{});
    EXPECT_LE(rel(*r.profile.limit_slope, 5e3), 1e-6);
    EXPECT_LE(r.report.discrepancy_sup_rel, 1e-5);
}

TEST(PrescribedSlope, RejectsNonPositiveSlope) {
    const auto g = GammaParam::make(2.0);
    EXPECT_THROW(solve_prescribed_slope(g, 0.0, ShootSpec{}), ConfigError);
    EXPECT_THROW(solve_prescribed_slope(g, -1.0, ShootSpec{}), ConfigError);
    ShootSpec bad;
    bad.rel_tol = 0.0;
    EXPECT_THROW(solve_prescribed_slope(g, 1.0, bad), ConfigError);
}

TEST(PrescribedSlope, RouteBAloneHitsTheSlope) {
    const auto g = GammaParam::make(1.5);
    const auto r = solve_route_b(g, 4.0, ShootSpec{});
    EXPECT_LE(std::abs(std::log(r.slope / 4.0)), 1e-7);
    EXPECT_GT(r.b, 0.0);
}
