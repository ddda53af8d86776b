#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include <halfspace/bounds.hpp>
#include <halfspace/singular_ode.hpp>

#include "oracles.hpp"

using namespace halfspace;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Profile1D power_profile(double gamma, double lo = 1e-6, double hi = 1e4, std::size_t n = 2000) {
    return sample_power(GammaParam::make(gamma), log_grid(lo, hi, n));
}

const Profile1D& slope_one(double gamma) {
    static std::map<double, Profile1D> cache;
    auto it = cache.find(gamma);
    if (it == cache.end()) it = cache.emplace(gamma, solve_prescribed_slope(GammaParam::make(gamma), 1.0, {}).profile).first;
    return it->second;
}

}  // namespace

TEST(UpperPower, EqualityCaseOnThePowerSolution) {
    const auto p = power_profile(2.0);
    CertificateOptions o;
    o.claim = p.gamma.c_gamma;
    const auto c = check_upper_power(p, StripSpec::make(1.0), o);
    EXPECT_LE(rel(c.empirical_constant, p.gamma.c_gamma), 1e-14);
    EXPECT_NEAR(c.margin, 0.0, 1e-15);
    EXPECT_TRUE(c.pass);
    EXPECT_LE(c.refinement_drift, 1e-14);
}

TEST(UpperPower, SupersolutionAttainsTwiceC) {
    const auto g = GammaParam::make(2.0);
    const auto w = sample_supersolution_w(g, log_grid(1e-4, 10.0, 500));
    const auto c = check_upper_power(w, StripSpec::make(1.0));
    EXPECT_LE(rel(c.empirical_constant, 2.0 * g.c_gamma), 1e-14);
    EXPECT_EQ(c.attained_at, 1.0);
}

TEST(UpperPower, LinearGrowthProfileIsFiniteAndStable) {
    const auto c = check_upper_power(slope_one(2.0), StripSpec::make(1.0));
    EXPECT_TRUE(std::isfinite(c.empirical_constant));
    EXPECT_LE(c.refinement_drift, 0.01);
    EXPECT_TRUE(c.pass);
}

TEST(UpperPower, EmptyStripIsAnError) {
    const auto p = power_profile(2.0, 1.0, 10.0, 10);
    EXPECT_THROW(check_upper_power(p, StripSpec::make(0.5)), ConfigError);
}

TEST(LowerPower, EqualityCaseAndLinearGrowth) {
    const auto p = power_profile(3.0);
    const auto c = check_lower_power(p);
    EXPECT_LE(rel(c.empirical_constant, p.gamma.c_gamma), 1e-14);
    EXPECT_TRUE(c.pass);
    const auto l = check_lower_power(slope_one(2.0));
    EXPECT_GT(l.empirical_constant, 0.0);
    EXPECT_TRUE(l.pass);
}

TEST(LowerPower, NonpositiveSampleIsAnInvariantViolation) {
    SampleSet s;
    s.z = {0.5, 1.0};
    s.u = {0.3, 0.0};
    s.grad = {1.0, 1.0};
    s.coarse = {1, 0};
    s.rows = 2;
    EXPECT_THROW(check_lower_power(s, GammaParam::make(2.0)), InvariantViolation);
}

TEST(LowerPower, BelowUpperOnTheStrip) {
    for (double gm : {1.5, 2.0, 3.0}) {
        const auto& p = slope_one(gm);
        const auto strip = StripSpec::make(1.0);
        EXPECT_LE(check_lower_power(p).empirical_constant, check_upper_power(p, strip).empirical_constant);
    }
}

TEST(LowerPower, InvariantUnderRescaling) {
    const auto& p = slope_one(2.0);
    const double base = check_lower_power(p).empirical_constant;
    for (double lam : {0.125, 3.0, 64.0})
        EXPECT_LE(rel(check_lower_power(rescale(p, lam)).empirical_constant, base), 1e-8) << "lambda=" << lam;
}

TEST(UpperPower, InvariantUnderRescalingOfThePowerSolution) {
    const auto p = power_profile(2.0);
    const auto strip = StripSpec::make(1.0);
    const double base = check_upper_power(p, strip).empirical_constant;
    for (double lam : {0.01, 7.0}) EXPECT_LE(rel(check_upper_power(rescale(p, lam), strip).empirical_constant, base), 1e-8);
}

TEST(LinearGrowth, PowerSolutionRatioPeaksAtTheThreshold) {
    const auto p = power_profile(2.0, 1e-3, 1e3, 601);
    for (double h : {0.7, 1.0, 5.0}) {
        const auto c = check_linear_growth(p, StripSpec::make(h));
        EXPECT_EQ(c.attained_at, h);
        // h is interpolated (cubic Hermite) when it is not a grid point
        EXPECT_LE(rel(c.empirical_constant, p.gamma.c_gamma * std::pow(h, p.gamma.alpha_pow - 1.0)), 1e-9);
    }
}

TEST(LinearGrowth, FarRatioAndAffineFitOnTheSlopeOneProfile) {
    CertificateOptions o;
    o.far_threshold = 1e2;
    const auto c = check_linear_growth(slope_one(2.0), StripSpec::make(1.0), o);
    ASSERT_TRUE(c.far_ratio && c.affine_c2 && c.affine_c1);
    EXPECT_NEAR(*c.far_ratio, 1.0, 0.02);
    EXPECT_GE(*c.affine_c2, 0.99);
    EXPECT_LE(*c.affine_c2, 1.01);
    // u <= c1 + c2 x_N at every sample
    const auto& p = slope_one(2.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        EXPECT_LE(p.values[i], *c.affine_c1 + *c.affine_c2 * p.grid[i] + 1e-12 * (1.0 + p.values[i]));
}

TEST(LinearGrowth, EmptyFarRegionIsAnError) {
    const auto p = power_profile(2.0, 1e-3, 1.0, 10);
    EXPECT_THROW(check_linear_growth(p, StripSpec::make(2.0)), ConfigError);
}

TEST(Gradient, ClosedFormOnThePowerSolution) {
    for (double gm : {1.5, 2.0, 4.0}) {
        const auto p = power_profile(gm, 1e-6, 100.0, 800);
        const auto [in, far] = check_gradient(p, StripSpec::make(1.0));
        ASSERT_TRUE(in.fitted_exponent.has_value());
        EXPECT_NEAR(*in.fitted_exponent, (1.0 - gm) / (gm + 1.0), 1e-12);
        EXPECT_LE(rel(in.empirical_constant, p.gamma.c_gamma * 2.0 / (gm + 1.0)), 1e-13);
        EXPECT_TRUE(in.pass);
        EXPECT_GT(far.empirical_constant, 0.0);
    }
}

TEST(Gradient, LinearGrowthStripExponentGammaThree) {
    CertificateOptions o;
    o.fit_window = std::pair{1e-4, 1e-2};
    const auto [in, far] = check_gradient(slope_one(3.0), StripSpec::make(1.0), o);
    EXPECT_NEAR(*in.fitted_exponent, -0.5, 0.05);
}

TEST(Gradient, FarConstantApproachesTheSlope) {
    CertificateOptions o;
    o.far_threshold = 2e3;
    const auto [in, far] = check_gradient(slope_one(2.0), StripSpec::make(1.0), o);
    EXPECT_GE(far.empirical_constant, 1.0);
    EXPECT_LE(far.empirical_constant, 1.0 + 1e-3);
}

TEST(Gradient, TooFewRowsIsAnError) {
    const auto p = power_profile(2.0, 0.2, 10.0, 20);
    EXPECT_THROW(check_gradient(p, StripSpec::make(0.3)), ConfigError);
}

TEST(Certificates, PassIffMarginNonnegative) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    const auto g = GammaParam::make(2.0);
    for (int k = 0; k < 200; ++k) {
        SampleSet s;
        for (int i = 1; i <= 40; ++i) {
            s.z.push_back(0.05 * i);
            s.u.push_back(u(rng) * std::pow(0.05 * i, g.alpha_pow));
            s.grad.push_back(u(rng));
            s.coarse.push_back(i % 2 == 0);
        }
        s.rows = 40;
        CertificateOptions o;
        o.claim = u(rng);
        for (const auto& c : {check_upper_power(s, g, StripSpec::make(1.0), o), check_lower_power(s, g, o)}) {
            EXPECT_EQ(c.pass, c.margin >= 0.0);
            // the constant is realized by a sample
            bool hit = false;
            for (std::size_t i = 0; i < s.z.size(); ++i)
                if (s.u[i] / std::pow(s.z[i], g.alpha_pow) == c.empirical_constant) hit = true;
            EXPECT_TRUE(hit);
        }
    }
}

TEST(Certificates, CheckAllReturnsFiveInOrder) {
    CertificateOptions o;
    o.far_threshold = 2e3;
    const auto cs = check_all(slope_one(2.0), StripSpec::make(1.0), o);
    ASSERT_EQ(cs.size(), 5u);
    EXPECT_EQ(cs[0].kind, CertificateKind::upper_power);
    EXPECT_EQ(cs[1].kind, CertificateKind::lower_power);
    EXPECT_EQ(cs[2].kind, CertificateKind::linear_growth);
    EXPECT_EQ(cs[3].kind, CertificateKind::gradient_strip);
    EXPECT_EQ(cs[4].kind, CertificateKind::gradient_far);
    for (const auto& c : cs) EXPECT_TRUE(c.pass) << to_string(c.kind) << " margin " << c.margin;
}

TEST(IntervalSubsolution, AmplitudeMatchesTheClosedForm) {
    // alpha(x) peaks at the centre, where it equals 2 C^(g+1) lambda1 / (g+1).
    for (const auto& a : oracle::interval_amplitude) {
        const auto w = build_interval_subsolution(GammaParam::make(a.gamma), 0.3, a.radius);
        EXPECT_LE(rel(w.amplitude, a.c), 1e-12) << "gamma=" << a.gamma << " r=" << a.radius;
        EXPECT_GE(w.max_alpha, 1.0 - 1e-5);
        EXPECT_LT(w.max_alpha, 1.0 - 1e-6);
    }
}

TEST(IntervalSubsolution, EndpointsCarryOnlyTheGradientTerm) {
    const auto g = GammaParam::make(2.0);
    const auto w = build_interval_subsolution(g, 0.0, 1.0);
    const double k = std::numbers::pi / 2.0;
    const double expect = 2.0 * std::pow(w.amplitude, 3.0) * (g.gamma - 1.0) / 9.0 * k * k;
    EXPECT_LE(rel(w.alpha_at(1.0), expect), 1e-12);
    EXPECT_LE(rel(w.alpha_at(-1.0), expect), 1e-12);
    EXPECT_EQ(w.value(1.0), 0.0);
    EXPECT_LE(rel(w.lambda1, k * k), 1e-15);
}

TEST(IntervalSubsolution, ScalesLikeRToTheAlpha) {
    const auto g = GammaParam::make(2.0);
    const double a1 = build_interval_subsolution(g, 0.0, 1.0).amplitude;
    for (double r : {0.5, 2.5, 10.0})
        EXPECT_LE(rel(build_interval_subsolution(g, 4.0, r).amplitude, std::pow(r, g.alpha_pow) * a1), 1e-10);
}

TEST(IntervalSubsolution, DiscreteResidualIsNonpositive) {
    for (double gm : {1.5, 2.0, 3.0}) {
        const auto w = build_interval_subsolution(GammaParam::make(gm), 0.0, 1.0);
        for (unsigned r : {0u, 1u, 2u}) {
            const auto c = check_subsolution(w, 10000, r);
            EXPECT_EQ(c.samples, 9999u);
            EXPECT_LE(c.max_rel_residual, 0.0) << "gamma=" << gm << " refinements=" << r;
        }
    }
}

TEST(IntervalSubsolution, ResidualApproachesAlphaMinusOne) {
    // away from the endpoints -w'' = alpha(x) w^-gamma, so the relative residual tends to alpha - 1
    const auto w = build_interval_subsolution(GammaParam::make(2.0), 0.0, 1.0);
    IntervalSubsolution inner = w;
    const auto c = check_subsolution(w, 4, 3);  // samples at -0.5, 0, 0.5
    EXPECT_NEAR(c.max_rel_residual, w.alpha_at(0.0) - 1.0, 1e-3);
    (void)inner;
}

TEST(IntervalSubsolution, RejectsBadRadius) {
    EXPECT_THROW(build_interval_subsolution(GammaParam::make(2.0), 0.0, 0.0), ConfigError);
    EXPECT_THROW(build_interval_subsolution(GammaParam::make(2.0), 0.0, -1.0), ConfigError);
}
