#pragma once

// Shooting for -v'' = v^-gamma on (0, inf) with v(0) = 0.
//
// Every solution with v(0) = 0 behaves near the origin like
//     v(t) = C t^a + b t^s + O(b^2 t^(2s-a)),   a = 2/(gamma+1), s = 2 - a,
// and b >= 0 labels the family: b = 0 is the power solution, b > 0 gives
// linear growth with slope M(b) proportional to b^((1-a)/(s-a)).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "core_profiles.hpp"
#include "dop853.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "profile.hpp"

namespace halfspace {

struct OdeState {
    double t = 0.0;
    double v = 0.0;
    double dv = 0.0;
};

struct ShootSpec {
    double t_start = 0.0;   // start-up abscissa; 0 selects the default rule
    double b = 1.0;         // coefficient of the growing mode t^s
    double horizon = 1e4;
    double rel_tol = 1e-6;  // accuracy target for slopes and route agreement
    double abs_tol = 1e-20;
    std::size_t max_steps = 2'000'000;
    double startup_rel = 1e-3;  // relative size of b t^s against C t^a at t_start
    double compare_span = 10.0; // routes are compared on (0, compare_span]

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
        if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
        if (t_start < 0.0 || (t_start > 0.0 && !(t_start < horizon)))
            throw ConfigError("t_start must satisfy 0 < t_start < horizon");
        if (max_steps == 0) throw ConfigError("max_steps must be positive");
        if (!(startup_rel > 0.0 && startup_rel <= 0.1)) throw ConfigError("startup_rel must lie in (0, 0.1]");
    }

    /// Local error target handed to the stepper.
    [[nodiscard]] double stepper_rtol() const { return std::max(1e-4 * rel_tol, 1e-14); }
};

/// Growing root of the indicial equation s(s-1) = 2 gamma (gamma-1)/(gamma+1)^2 obtained by
/// linearizing about the power solution.
inline double indicial_exponent(const GammaParam& g) { return g.indicial(); }

struct Expansion {
    OdeState state;
    double correction_ratio = 0.0;  // b t^(s-a) / C
    double residual = 0.0;          // -v'' - v^-gamma of the truncated series
    double rel_residual = 0.0;      // residual / v^-gamma
};

/// Two-term start-up series at t > 0.
inline Expansion local_expansion(const GammaParam& g, double b, double t) {
    if (!(t > 0.0)) throw ConfigError("local_expansion requires t > 0");
    const double a = g.alpha_pow;
    const double s = g.indicial();
    const double C = g.c_gamma;
    const double ratio = b * std::pow(t, s - a) / C;
    if (std::abs(ratio) > 0.1)
        throw ConfigError("start-up expansion outside its validity window (b t^(s-a)/C = " + std::to_string(ratio) +
                          " > 0.1); shrink t_start");
    const double ta = std::pow(t, a);
    const double ts = std::pow(t, s);
    Expansion e;
    e.state = {t, C * ta + b * ts, C * a * ta / t + b * s * ts / t};
    e.correction_ratio = ratio;
    const double d2 = C * a * (a - 1.0) * ta / (t * t) + b * s * (s - 1.0) * ts / (t * t);
    const double force = std::pow(e.state.v, -g.gamma);
    e.residual = -d2 - force;
    e.rel_residual = e.residual / force;
    return e;
}

/// t_start = (startup_rel * C / b)^(1/(s-a)) clamped to [1e-12, 0.1].
inline double default_t_start(const GammaParam& g, double b, double startup_rel = 1e-3) {
    const double span = g.indicial() - g.alpha_pow;
    const double t = std::pow(startup_rel * g.c_gamma / std::max(b, 1e-300), 1.0 / span);
    return std::clamp(t, 1e-12, 0.1);
}

struct IntegrateOptions {
    std::optional<double> stop_below;  // stop after the first step with v <= this value
};

struct Trajectory {
    Profile1D profile;          // raw kind, ascending grid
    OdeState last;              // final state in integration order
    bool hit_floor = false;
    double energy_drift = 0.0;  // max |E - E0| / (1 + |E0| + v^(1-gamma)/(gamma-1))
    double energy_drift_abs = 0.0;
    std::size_t steps = 0;
    std::size_t rejected = 0;
};

/// Adaptive DOP853 integration of the regular ODE while v > 0.
///
/// Steps are clamped to a quarter of v/|v'| (and of t when moving forward at t > 0), so the
/// singular slope near a zero of v cannot carry a step across it. A trial step producing
/// v <= 0 is rejected and halved.
inline Trajectory integrate(const GammaParam& g, const OdeState& s0, double t_end, const ShootSpec& spec,
                            const IntegrateOptions& opts = {}) {
    if (!(s0.v > 0.0)) throw ConfigError("integrate requires v > 0 at the initial state");
    if (t_end == s0.t) throw ConfigError("integrate requires t_end != t_start");
    using State = dop853::State<2>;
    const double gamma = g.gamma;
    auto rhs = [gamma](double, const State& y) -> State {
        if (!(y[0] > 0.0)) return {y[1], std::numeric_limits<double>::quiet_NaN()};
        return {y[1], -std::pow(y[0], -gamma)};
    };
    const double rtol = spec.stepper_rtol();
    const double atol = spec.abs_tol;
    const double dir = t_end > s0.t ? 1.0 : -1.0;

    Trajectory tr;
    std::vector<OdeState> pts{s0};
    double t = s0.t;
    State y{s0.v, s0.dv};
    State k1 = rhs(t, y);
    const double e0 = first_integral(g, s0.v, s0.dv);

    auto max_step = [&](double tt, const State& yy) {
        double m = std::abs(yy[1]) > 0.0 ? 0.25 * yy[0] / std::abs(yy[1]) : std::numeric_limits<double>::infinity();
        if (dir > 0.0 && tt > 0.0) m = std::min(m, 0.25 * tt);
        return m;
    };
    double h = std::min(std::abs(t_end - t), max_step(t, y)) * 0.05;

    while (t != t_end) {
        if (tr.steps + tr.rejected >= spec.max_steps)
            throw NumericalError("integrate: max_steps (" + std::to_string(spec.max_steps) + ") exceeded at t=" +
                                 std::to_string(t) + ", truncation error not controlled beyond this point");
        const double remaining = std::abs(t_end - t);
        double step = std::min({std::abs(h), max_step(t, y), remaining});
        const bool last = step >= remaining;
        if (step <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-300))
            throw NumericalError("integrate: step size underflow at t=" + std::to_string(t));
        const auto att = dop853::attempt<2>(rhs, t, y, k1, dir * step, rtol, atol);
        if (!att.finite || !(att.y[0] > 0.0)) {
            h = 0.5 * step;
            ++tr.rejected;
            continue;
        }
        if (att.err > 1.0) {
            h = step * dop853::step_factor(att.err, false);
            ++tr.rejected;
            continue;
        }
        t = last ? t_end : t + dir * step;
        y = att.y;
        k1 = rhs(t, y);
        ++tr.steps;
        pts.push_back({t, y[0], y[1]});
        const double e = first_integral(g, y[0], y[1]);
        const double pot = std::pow(y[0], 1.0 - gamma) / (gamma - 1.0);
        tr.energy_drift_abs = std::max(tr.energy_drift_abs, std::abs(e - e0));
        tr.energy_drift = std::max(tr.energy_drift, std::abs(e - e0) / (1.0 + std::abs(e0) + pot));
        h = step * dop853::step_factor(att.err, true);
        if (opts.stop_below && y[0] <= *opts.stop_below) {
            tr.hit_floor = true;
            break;
        }
    }
    tr.last = pts.back();
    if (dir < 0.0) std::reverse(pts.begin(), pts.end());
    tr.profile.gamma = g;
    tr.profile.kind = ProfileKind::raw;
    tr.profile.grid.reserve(pts.size());
    tr.profile.values.reserve(pts.size());
    tr.profile.derivs.reserve(pts.size());
    for (const auto& p : pts) {
        tr.profile.grid.push_back(p.t);
        tr.profile.values.push_back(p.v);
        tr.profile.derivs.push_back(p.dv);
    }
    return tr;
}

/// sqrt(max(0, 2E)) with E the first integral at the last sample.
inline double limit_slope(const Profile1D& p) {
    if (p.empty()) throw ConfigError("limit_slope of an empty profile");
    const double e = first_integral(p.gamma, p.values.back(), p.derivs.back());
    return std::sqrt(std::max(0.0, 2.0 * e));
}

struct Extension {
    Profile1D profile;
    double tau0 = 0.0;           // location of the zero in the input profile's coordinates
    double b_fit = 0.0;          // growing-mode coefficient of the fitted tail
    double fit_residual = 0.0;   // max relative misfit of the two-term tail
    std::size_t fit_points = 0;
    std::size_t stages = 0;
    double floor = 0.0;
    double energy_drift = 0.0;
};

namespace detail {

struct TailFit {
    double zero = 0.0;
    double b = 0.0;
    double residual = 0.0;
};

/// Least-squares fit of v = C (x-z)^a + b (x-z)^s to the tail samples, in relative residuals.
inline TailFit fit_tail(const GammaParam& g, const std::vector<double>& x, const std::vector<double>& v) {
    const double a = g.alpha_pow;
    const double s = g.indicial();
    const double C = g.c_gamma;
    const std::size_t n = x.size();

    std::size_t lowest = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i] < v[lowest]) lowest = i;
    double z = x[lowest] - std::pow(v[lowest] / C, 1.0 / a);
    double b = 0.0;

    auto residuals = [&](double zz, double bb, double* worst) {
        double ss = 0.0;
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - zz;
            if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
            const double r = (C * std::pow(d, a) + bb * std::pow(d, s)) / v[i] - 1.0;
            ss += r * r;
            w = std::max(w, std::abs(r));
        }
        if (worst) *worst = w;
        return ss;
    };

    auto gauss_newton = [&](bool with_b) {
        double cost = residuals(z, b, nullptr);
        for (int it = 0; it < 100; ++it) {
            double jzz = 0, jzb = 0, jbb = 0, gz = 0, gb = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = x[i] - z;
                const double r = (C * std::pow(d, a) + b * std::pow(d, s)) / v[i] - 1.0;
                const double dz = -(C * a * std::pow(d, a - 1.0) + b * s * std::pow(d, s - 1.0)) / v[i];
                const double db = std::pow(d, s) / v[i];
                jzz += dz * dz;
                jzb += dz * db;
                jbb += db * db;
                gz += dz * r;
                gb += db * r;
            }
            double step_z = 0, step_b = 0;
            if (with_b) {
                // column-scaled 2x2 normal equations
                const double sz = std::sqrt(jzz), sb = std::sqrt(jbb);
                const double m11 = 1.0, m12 = jzb / (sz * sb), m22 = 1.0;
                const double r1 = -gz / sz, r2 = -gb / sb;
                const double det = m11 * m22 - m12 * m12;
                if (std::abs(det) < 1e-14) {
                    step_z = -gz / jzz;
                } else {
                    step_z = (r1 * m22 - m12 * r2) / det / sz;
                    step_b = (m11 * r2 - m12 * r1) / det / sb;
                }
            } else {
                step_z = -gz / jzz;
            }
            double lam = 1.0;
            double trial = residuals(z + lam * step_z, b + lam * step_b, nullptr);
            while (!(trial <= cost) && lam > 1e-8) {
                lam *= 0.5;
                trial = residuals(z + lam * step_z, b + lam * step_b, nullptr);
            }
            if (!(trial <= cost)) break;
            const double dz_abs = std::abs(lam * step_z);
            z += lam * step_z;
            b += lam * step_b;
            const bool done = cost - trial <= 1e-30 + 1e-14 * cost && dz_abs <= 1e-15 * std::abs(x[lowest] - z);
            cost = trial;
            if (done) break;
        }
    };

    gauss_newton(true);
    if (b < 0.0) {
        b = 0.0;
        gauss_newton(false);
    }
    TailFit f;
    f.zero = z;
    f.b = b;
    residuals(z, b, &f.residual);
    return f;
}

}  // namespace detail

/// Continues a solution backward from its leftmost sample to its zero tau0 and returns
/// the translated profile v(t + tau0), which starts at (0, 0, +inf).
///
/// Requires v'(t0) > v(t0)/t0 at the leftmost sample: the concave backward continuation
/// then stays below the tangent line and vanishes inside (0, t0].
inline Extension extend_to_zero(const Profile1D& p, const ShootSpec& spec) {
    validate(p);
    const GammaParam& g = p.gamma;
    Extension out;
    if (p.starts_at_origin()) {
        out.profile = p;
        out.tau0 = 0.0;
        if (p.size() > 1) {
            const double t1 = p.grid[1];
            out.b_fit = std::max(0.0, (p.values[1] - g.c_gamma * std::pow(t1, g.alpha_pow)) /
                                          std::pow(t1, g.indicial()));
        }
        return out;
    }
    const double t0 = p.grid.front();
    const double v0 = p.values.front();
    const double d0 = p.derivs.front();
    const double ratio = d0 * t0 / v0;
    if (!(t0 > 0.0) || !(ratio > 1.0))
        throw ConfigError("extend_to_zero: tangent-line condition v'(t0) > v(t0)/t0 fails (v'(t0) t0 / v(t0) = " +
                          std::to_string(ratio) + ")");

    const double energy = first_integral(g, v0, d0);
    double floor = std::min(std::max(std::sqrt(spec.abs_tol), 1e-8), 1e-6 * v0);
    if (energy > 0.0) {
        const double v_cross = std::pow(2.0 / ((g.gamma - 1.0) * 2.0 * energy), 1.0 / (g.gamma - 1.0));
        floor = std::min(floor, 1e-6 * v_cross);
    }
    out.floor = floor;

    // Backward stages, one decade of v each, each on its own clock starting at 0.
    std::vector<Profile1D> stages;
    std::vector<double> lengths;
    OdeState cur{0.0, v0, d0};
    for (int k = 0; k < 400; ++k) {
        const double target = std::max(cur.v / 10.0, floor);
        const double t_end = -1.0001 * cur.v / cur.dv;
        auto tr = integrate(g, cur, t_end, spec, IntegrateOptions{target});
        out.energy_drift = std::max(out.energy_drift, tr.energy_drift);
        if (!tr.hit_floor)
            throw NumericalError("extend_to_zero: backward integration reached the tangent bound without v "
                                 "dropping below " + std::to_string(target) + "; resolution error");
        lengths.push_back(tr.last.t);
        stages.push_back(std::move(tr.profile));
        cur = {0.0, tr.last.v, tr.last.dv};
        if (cur.v <= floor) break;
    }
    if (cur.v > floor) throw NumericalError("extend_to_zero: floor not reached; resolution error");
    const std::size_t K = stages.size();
    out.stages = K;

    // tail[k] = sum of lengths[k .. K-2]: offset from stage k's clock to the last stage's clock.
    std::vector<double> tail(K, 0.0);
    for (std::size_t k = K - 1; k-- > 0;) tail[k] = lengths[k] + tail[k + 1];

    // All samples in the last stage's clock, in increasing order.
    std::vector<double> xs, vs, ds;
    for (std::size_t k = K; k-- > 0;) {
        const Profile1D& st = stages[k];
        for (std::size_t i = 0; i < st.size(); ++i) {
            if (k > 0 && i + 1 == st.size()) continue;  // stage start repeats the previous stage's end
            xs.push_back(st.grid[i] - tail[k]);
            vs.push_back(st.values[i]);
            ds.push_back(st.derivs[i]);
        }
    }
    // stage 0 ends at local time 0 which is the input's t0; the input follows from its second sample
    for (std::size_t i = 1; i < p.size(); ++i) {
        xs.push_back((p.grid[i] - t0) - tail[0]);
        vs.push_back(p.values[i]);
        ds.push_back(p.derivs[i]);
    }

    std::vector<double> fx, fv;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (vs[i] <= 10.0 * floor) {
            fx.push_back(xs[i]);
            fv.push_back(vs[i]);
        }
    if (fx.size() < 4) {
        fx.assign(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(8, xs.size())));
        fv.assign(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(fx.size()));
    }
    const auto fit = detail::fit_tail(g, fx, fv);
    out.b_fit = fit.b;
    out.fit_residual = fit.residual;
    out.fit_points = fx.size();
    const double d_max = fx.back() - fit.zero;
    const double validity = fit.b * std::pow(d_max, g.indicial() - g.alpha_pow) / g.c_gamma;
    if (!(fit.residual <= 1e-4) || validity > 0.1)
        throw NumericalError("extend_to_zero: tail does not match the two-term expansion (misfit " +
                             std::to_string(fit.residual) + ", correction " + std::to_string(validity) +
                             "); resolution error, shrink the floor");
    out.tau0 = t0 + tail[0] + fit.zero;

    Profile1D& q = out.profile;
    q.gamma = g;
    q.grid = {0.0};
    q.values = {0.0};
    q.derivs = {std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = xs[i] - fit.zero;
        if (!(t > q.grid.back())) continue;
        q.grid.push_back(t);
        q.values.push_back(vs[i]);
        q.derivs.push_back(ds[i]);
    }
    const double slope = limit_slope(q);
    q.limit_slope = slope;
    q.kind = slope > 0.0 ? ProfileKind::linear_growth : ProfileKind::power;
    return out;
}

// ---------------------------------------------------------------------------------------------
// Prescribed slope at infinity

/// Route-A seed: v(t0) = value_factor * w(t0), v'(t0) = tangent_factor * v(t0) / t0.
/// With value_factor, tangent_factor > 1 the data lie above w in value and slope and satisfy
/// the tangent-line condition needed for the extension to zero.
struct RouteASeed {
    double t0 = 1.0;
    double value_factor = 2.0;
    double tangent_factor = 2.0;
};

inline OdeState seed_state(const GammaParam& g, const RouteASeed& seed) {
    if (!(seed.t0 > 0.0) || !(seed.value_factor > 1.0) || !(seed.tangent_factor > 1.0))
        throw ConfigError("route-A seed needs t0 > 0, value_factor > 1, tangent_factor > 1");
    const double v = seed.value_factor * eval_supersolution_w(g, seed.t0);
    return {seed.t0, v, seed.tangent_factor * v / seed.t0};
}

struct RouteAResult {
    Profile1D profile;
    Extension extension;
    double seed_slope = 0.0;  // L before rescaling
    double lambda = 1.0;
    double energy_drift = 0.0;
};

/// Seed above w, extend to the zero, rescale by lambda = (M/L)^((gamma+1)/(gamma-1)).
inline RouteAResult solve_route_a(const GammaParam& g, double M, const ShootSpec& spec, const RouteASeed& seed = {}) {
    if (!(M > 0.0)) throw ConfigError("prescribed slope must be positive");
    spec.validate();
    const OdeState s0 = seed_state(g, seed);
    const double lam_exp = (g.gamma + 1.0) / (g.gamma - 1.0);
    const double l0 = std::sqrt(2.0 * first_integral(g, s0.v, s0.dv));
    const double lam0 = std::pow(M / l0, lam_exp);
    const double reach = std::max(seed.t0, 1.05 * spec.horizon * lam0);
    auto fwd = integrate(g, s0, s0.t + reach, spec);
    RouteAResult r;
    r.extension = extend_to_zero(fwd.profile, spec);
    r.energy_drift = std::max(fwd.energy_drift, r.extension.energy_drift);
    r.seed_slope = limit_slope(r.extension.profile);
    r.lambda = std::pow(M / r.seed_slope, lam_exp);
    r.profile = truncate(rescale(r.extension.profile, r.lambda), spec.horizon);
    r.profile.kind = ProfileKind::linear_growth;
    r.profile.limit_slope = limit_slope(r.profile);
    return r;
}

/// Shoots from the origin with growing-mode coefficient b; the origin is prepended as (0, 0, inf).
inline Trajectory shoot_from_origin(const GammaParam& g, double b, const ShootSpec& spec) {
    if (!(b >= 0.0)) throw ConfigError("growing-mode coefficient b must be >= 0");
    const double t_start = spec.t_start > 0.0 ? spec.t_start : default_t_start(g, b, spec.startup_rel);
    const auto e = local_expansion(g, b, t_start);
    auto tr = integrate(g, e.state, std::max(spec.horizon, 2.0 * t_start), spec);
    Profile1D& p = tr.profile;
    p.grid.insert(p.grid.begin(), 0.0);
    p.values.insert(p.values.begin(), 0.0);
    p.derivs.insert(p.derivs.begin(), std::numeric_limits<double>::infinity());
    p.limit_slope = b > 0.0 ? limit_slope(p) : 0.0;
    p.kind = b > 0.0 ? ProfileKind::linear_growth : ProfileKind::power;
    return tr;
}

struct RouteBResult {
    Profile1D profile;
    double b = 0.0;
    double slope = 0.0;
    int iterations = 0;
    double energy_drift = 0.0;
};

/// Secant iteration on log b (with bisection safeguard) until limit_slope = M.
inline RouteBResult solve_route_b(const GammaParam& g, double M, const ShootSpec& spec) {
    if (!(M > 0.0)) throw ConfigError("prescribed slope must be positive");
    spec.validate();
    const double target = std::log(M);
    const double tol = 0.1 * spec.rel_tol;
    RouteBResult best;
    auto probe = [&](double logb) {
        auto tr = shoot_from_origin(g, std::exp(logb), spec);
        const double slope = *tr.profile.limit_slope;
        ++best.iterations;
        best.profile = std::move(tr.profile);
        best.b = std::exp(logb);
        best.slope = slope;
        best.energy_drift = std::max(best.energy_drift, tr.energy_drift);
        return std::log(slope) - target;
    };
    double x0 = 0.0, f0 = probe(x0);
    if (std::abs(f0) <= tol) return best;
    double x1 = f0 > 0.0 ? -1.0 : 1.0, f1 = probe(x1);
    std::optional<double> lo, hi;  // bracket in log b: f(lo) < 0 < f(hi)
    auto note = [&](double x, double f) {
        if (f < 0.0 && (!lo || x > *lo)) lo = x;
        if (f > 0.0 && (!hi || x < *hi)) hi = x;
    };
    note(x0, f0);
    note(x1, f1);
    for (int it = 0; it < 80; ++it) {
        if (std::abs(f1) <= tol) return best;
        double x2 = (f1 != f0) ? x1 - f1 * (x1 - x0) / (f1 - f0) : x1 + 1.0;
        if (lo && hi && !(x2 > *lo && x2 < *hi)) x2 = 0.5 * (*lo + *hi);
        if (!std::isfinite(x2)) throw NumericalError("route B: secant produced a non-finite iterate");
        x2 = std::clamp(x2, x1 - 20.0, x1 + 20.0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = probe(x1);
        note(x1, f1);
    }
    throw NumericalError("route B: shooting on b did not converge (horizon too short?)");
}

struct ShootReport {
    double route_a_slope = 0.0;
    double route_b_slope = 0.0;
    double discrepancy_sup_rel = 0.0;
    double tau0 = 0.0;
    double b_fit = 0.0;
    double energy_drift = 0.0;
};

struct ShootResult {
    Profile1D profile;  // route A
    Profile1D route_b;
    ShootReport report;
};

/// Builds the unique solution with v(0) = 0 and slope M at infinity by both routes and
/// compares them on (0, compare_span]. Does not throw on route disagreement.
inline ShootResult shoot_both_routes(const GammaParam& g, double M, const ShootSpec& spec, const RouteASeed& seed = {}) {
    if (!(M > 0.0) || !std::isfinite(M)) throw ConfigError("prescribed slope must be positive and finite");
    spec.validate();
    // Extreme slopes: solve at M = 1 and rescale, so horizons and start-up windows stay tuned.
    if (M < 1e-3 || M > 1e3) {
        const double lam = std::pow(M, (g.gamma + 1.0) / (g.gamma - 1.0));
        ShootSpec unit = spec;
        unit.horizon = spec.horizon * lam;
        unit.compare_span = spec.compare_span * lam;
        auto r = shoot_both_routes(g, 1.0, unit, seed);
        r.profile = rescale(r.profile, lam);
        r.route_b = rescale(r.route_b, lam);
        r.report.route_a_slope = limit_slope(r.profile);
        r.report.route_b_slope = limit_slope(r.route_b);
        r.report.tau0 /= lam;
        return r;
    }
    auto fb = std::async(std::launch::async, [&] { return solve_route_b(g, M, spec); });
    auto a = solve_route_a(g, M, spec, seed);
    auto b = fb.get();
    ShootResult r;
    r.report.route_a_slope = *a.profile.limit_slope;
    r.report.route_b_slope = b.slope;
    r.report.discrepancy_sup_rel = sup_rel_discrepancy(a.profile, b.profile, 0.0, spec.compare_span);
    r.report.tau0 = a.extension.tau0;
    r.report.b_fit = a.extension.b_fit;
    r.report.energy_drift = std::max(a.energy_drift, b.energy_drift);
    r.profile = std::move(a.profile);
    r.route_b = std::move(b.profile);
    return r;
}

/// shoot_both_routes, failing hard when the routes disagree by more than 10 * rel_tol.
inline ShootResult solve_prescribed_slope(const GammaParam& g, double M, const ShootSpec& spec,
                                          const RouteASeed& seed = {}) {
    auto r = shoot_both_routes(g, M, spec, seed);
    if (r.report.discrepancy_sup_rel > 10.0 * spec.rel_tol)
        throw NumericalError("route A and route B disagree (sup-relative " +
                             std::to_string(r.report.discrepancy_sup_rel) + " > 10 rel_tol)");
    return r;
}

}  // namespace halfspace
