#pragma once

// Empirical certificates for the growth bounds of half-space solutions, evaluated on sampled
// profiles and solved fields, and the 1-D eigenfunction subsolution C cos(...)^(2/(gamma+1)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core_profiles.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "gamma.hpp"
#include "profile.hpp"

namespace halfspace {

enum class CertificateKind { upper_power, lower_power, linear_growth, gradient_strip, gradient_far };

inline std::string_view to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::upper_power: return "upper_power";
        case CertificateKind::lower_power: return "lower_power";
        case CertificateKind::linear_growth: return "linear_growth";
        case CertificateKind::gradient_strip: return "gradient_strip";
        case CertificateKind::gradient_far: return "gradient_far";
    }
    return "upper_power";
}

struct BoundCertificate {
    CertificateKind kind = CertificateKind::upper_power;
    std::string region;
    double empirical_constant = 0.0;
    double margin = 0.0;
    bool pass = false;
    std::size_t samples = 0;
    double refinement_drift = 0.0;
    double attained_at = 0.0;  // x_N of the sample realizing the sup/inf
    std::optional<double> fitted_exponent;  // gradient_strip
    std::optional<double> far_ratio;        // linear_growth: u / x_N at the outermost sample
    std::optional<double> affine_c1;        // linear_growth: u <= c1 + c2 x_N
    std::optional<double> affine_c2;
};

struct CertificateOptions {
    std::optional<double> claim;              // reference constant the sup/inf is held against
    double drift_tol = 0.01;                  // allowed relative change between the two resolutions
    std::optional<double> far_threshold;      // default: the strip height
    std::optional<std::pair<double, double>> fit_window;  // x_N range of the gradient exponent fit
};

/// Values (and optionally gradient magnitudes) at heights x_N > 0. `coarse` marks the samples
/// kept at the lower resolution (every other grid point / node). For profiles, `extra` heights
/// (region edges) are interpolated and kept at both resolutions.
struct SampleSet {
    std::vector<double> z;
    std::vector<double> u;
    std::vector<double> grad;
    std::vector<char> coarse;
    std::size_t rows = 0;  // distinct heights
};

inline SampleSet samples_of(const Profile1D& p, const std::vector<double>& extra = {}) {
    validate(p);
    SampleSet s;
    std::vector<double> pts;
    for (double t : extra)
        if (t > 0.0 && t >= p.t_min() && t <= p.t_max() &&
            !std::binary_search(p.grid.begin(), p.grid.end(), t))
            pts.push_back(t);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::size_t e = 0;
    auto push = [&](double t, double v, double d, bool coarse) {
        s.z.push_back(t);
        s.u.push_back(v);
        s.grad.push_back(std::abs(d));
        s.coarse.push_back(coarse);
    };
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (e < pts.size() && pts[e] < p.grid[i]) {
            const auto ev = evaluate(p, pts[e]);
            push(pts[e++], ev.v, ev.dv, true);
        }
        if (p.grid[i] > 0.0) push(p.grid[i], p.values[i], p.derivs[i], i % 2 == 0);
    }
    s.rows = s.z.size();
    return s;
}

/// Every node above the bottom row; gradients (centred differences) are attached only to interior
/// nodes at least 4 rows above the bottom and are NaN elsewhere.
inline SampleSet samples_of(const Field2D& f) {
    const Grid2D& g = f.grid;
    if (f.values.size() != g.nodes()) throw InvariantViolation("field size does not match its grid");
    SampleSet s;
    for (std::size_t j = 1; j <= g.nz; ++j) {
        for (std::size_t i = 0; i <= g.nx; ++i) {
            const double u = f.at(i, j);
            if (!(u > 0.0))
                throw InvariantViolation("nonpositive interior sample at node (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            double gr = std::numeric_limits<double>::quiet_NaN();
            if (j >= 4 && j < g.nz && i > 0 && i < g.nx) {
                const double gx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * g.h);
                const double gz = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * g.h);
                gr = std::hypot(gx, gz);
            }
            s.z.push_back(g.z(j));
            s.u.push_back(u);
            s.grad.push_back(gr);
            s.coarse.push_back(i % 2 == 0 && j % 2 == 0);
        }
    }
    s.rows = g.nz;
    return s;
}

namespace detail {

struct Extreme {
    double value = std::numeric_limits<double>::quiet_NaN();
    double at = 0.0;
    std::size_t count = 0;
    double coarse_value = std::numeric_limits<double>::quiet_NaN();
};

/// sup (or inf) of q(k) over samples with keep(k), at full and coarse resolution.
template <class Keep, class Q>
Extreme extreme(const SampleSet& s, bool sup, Keep&& keep, Q&& q) {
    Extreme e;
    auto better = [sup](double a, double b) { return std::isnan(b) || (sup ? a > b : a < b); };
    for (std::size_t k = 0; k < s.z.size(); ++k) {
        if (!keep(k)) continue;
        const double v = q(k);
        if (std::isnan(v)) continue;
        ++e.count;
        if (better(v, e.value)) {
            e.value = v;
            e.at = s.z[k];
        }
        if (s.coarse[k] && better(v, e.coarse_value)) e.coarse_value = v;
    }
    return e;
}

inline double drift_of(const Extreme& e) {
    if (std::isnan(e.coarse_value) || !(std::abs(e.value) > 0.0)) return std::numeric_limits<double>::infinity();
    return std::abs(e.value - e.coarse_value) / std::abs(e.value);
}

/// Relative slack against a claimed constant, with round-off below 1e-12 reported as 0.
inline double slack(double have, double claim, bool upper) {
    double s = upper ? (claim - have) / claim : (have - claim) / claim;
    if (std::abs(s) <= 1e-12) s = 0.0;
    return s;
}

inline void finish(BoundCertificate& c, const Extreme& e, const CertificateOptions& o, bool upper) {
    c.empirical_constant = e.value;
    c.attained_at = e.at;
    c.samples = e.count;
    c.refinement_drift = drift_of(e);
    double m = o.drift_tol - c.refinement_drift;
    if (o.claim) m = std::min(m, slack(e.value, *o.claim, upper));
    if (!std::isfinite(e.value)) m = -std::numeric_limits<double>::infinity();
    c.margin = m;
    c.pass = m >= 0.0;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline double far_threshold(const StripSpec& strip, const CertificateOptions& o) {
    return o.far_threshold ? *o.far_threshold : strip.height;
}

}  // namespace detail

/// sup of u / x_N^(2/(gamma+1)) over the strip 0 < x_N <= height.
inline BoundCertificate check_upper_power(const SampleSet& s, const GammaParam& g, const StripSpec& strip,
                                          const CertificateOptions& o = {}) {
    BoundCertificate c;
    c.kind = CertificateKind::upper_power;
    c.region = "0 < x_N <= " + detail::fmt(strip.height);
    const auto e = detail::extreme(
        s, true, [&](std::size_t k) { return s.z[k] <= strip.height; },
        [&](std::size_t k) { return s.u[k] / std::pow(s.z[k], g.alpha_pow); });
    if (e.count == 0) throw ConfigError("upper power check: no samples in the strip");
    detail::finish(c, e, o, true);
    return c;
}

/// inf of u / x_N^(2/(gamma+1)) over every sample.
inline BoundCertificate check_lower_power(const SampleSet& s, const GammaParam& g, const CertificateOptions& o = {}) {
    BoundCertificate c;
    c.kind = CertificateKind::lower_power;
    c.region = "x_N > 0";
    for (std::size_t k = 0; k < s.z.size(); ++k)
        if (!(s.u[k] > 0.0)) throw InvariantViolation("nonpositive interior sample at x_N=" + detail::fmt(s.z[k]));
    const auto e = detail::extreme(
        s, false, [](std::size_t) { return true; },
        [&](std::size_t k) { return s.u[k] / std::pow(s.z[k], g.alpha_pow); });
    if (e.count == 0) throw ConfigError("lower power check: empty sample set");
    detail::finish(c, e, o, false);
    if (!(e.value > 0.0)) {
        c.margin = std::min(c.margin, e.value);
        c.pass = false;
    }
    return c;
}

/// sup of u / x_N over the far region x_N >= threshold, plus the ratio at the outermost sample
/// and a global affine bound u <= c1 + c2 x_N with c2 fitted on the last decade of the far region.
inline BoundCertificate check_linear_growth(const SampleSet& s, const StripSpec& strip,
                                            const CertificateOptions& o = {}) {
    const double thr = detail::far_threshold(strip, o);
    BoundCertificate c;
    c.kind = CertificateKind::linear_growth;
    c.region = "x_N >= " + detail::fmt(thr);
    const auto e = detail::extreme(
        s, true, [&](std::size_t k) { return s.z[k] >= thr; }, [&](std::size_t k) { return s.u[k] / s.z[k]; });
    if (e.count == 0) throw ConfigError("linear growth check: empty far region beyond x_N=" + detail::fmt(thr));
    detail::finish(c, e, o, true);

    double zmax = 0.0;
    for (double z : s.z) zmax = std::max(zmax, z);
    // outermost ratio: largest among samples at the top height
    double fr = 0.0;
    for (std::size_t k = 0; k < s.z.size(); ++k)
        if (s.z[k] == zmax) fr = std::max(fr, s.u[k] / s.z[k]);
    c.far_ratio = fr;

    auto fit = [&](double lo) {
        double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < s.z.size(); ++k) {
            if (!(s.z[k] >= thr && s.z[k] >= lo)) continue;
            n += 1;
            sx += s.z[k];
            sy += s.u[k];
            sxx += s.z[k] * s.z[k];
            sxy += s.z[k] * s.u[k];
        }
        const double den = n * sxx - sx * sx;
        return std::pair{n, den > 0.0 ? (n * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN()};
    };
    auto [n, c2] = fit(0.1 * zmax);
    if (n < 2 || std::isnan(c2)) std::tie(n, c2) = fit(0.0);
    if (std::isnan(c2)) c2 = fr;
    double c1 = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.z.size(); ++k) c1 = std::max(c1, s.u[k] - c2 * s.z[k]);
    c.affine_c1 = c1;
    c.affine_c2 = c2;
    return c;
}

/// (i) sup of |grad u| x_N^((gamma-1)/(gamma+1)) over the strip, with the log-log slope of |grad u|
/// against x_N; (ii) sup of |grad u| over the far region.
inline std::pair<BoundCertificate, BoundCertificate> check_gradient(const SampleSet& s, const GammaParam& g,
                                                                    const StripSpec& strip,
                                                                    const CertificateOptions& o = {}) {
    BoundCertificate in, out;
    in.kind = CertificateKind::gradient_strip;
    in.region = "0 < x_N <= " + detail::fmt(strip.height);
    auto in_strip = [&](std::size_t k) { return s.z[k] <= strip.height && std::isfinite(s.grad[k]); };

    std::vector<double> heights;
    for (std::size_t k = 0; k < s.z.size(); ++k)
        if (in_strip(k)) heights.push_back(s.z[k]);
    std::sort(heights.begin(), heights.end());
    heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
    if (heights.size() < 8)
        throw ConfigError("gradient check: insufficient data (" + std::to_string(heights.size()) +
                          " sample rows in the strip, need 8)");

    const double pw = 1.0 - g.alpha_pow;
    const auto ei = detail::extreme(s, true, in_strip, [&](std::size_t k) { return s.grad[k] * std::pow(s.z[k], pw); });
    CertificateOptions oi = o;
    detail::finish(in, ei, oi, true);

    const double lo = o.fit_window ? o.fit_window->first : 0.0;
    const double hi = o.fit_window ? o.fit_window->second : strip.height;
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < s.z.size(); ++k) {
        if (!in_strip(k) || s.z[k] < lo || s.z[k] > hi || !(s.grad[k] > 0.0)) continue;
        const double x = std::log(s.z[k]), y = std::log(s.grad[k]);
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (n < 2 || !(den > 0.0)) throw ConfigError("gradient check: fewer than 2 samples in the exponent fit window");
    in.fitted_exponent = (n * sxy - sx * sy) / den;

    const double thr = detail::far_threshold(strip, o);
    out.kind = CertificateKind::gradient_far;
    out.region = "x_N >= " + detail::fmt(thr);
    const auto ef = detail::extreme(
        s, true, [&](std::size_t k) { return s.z[k] >= thr && std::isfinite(s.grad[k]); },
        [&](std::size_t k) { return s.grad[k]; });
    if (ef.count == 0) throw ConfigError("gradient check: empty far region beyond x_N=" + detail::fmt(thr));
    CertificateOptions of = o;
    of.claim.reset();
    detail::finish(out, ef, of, true);
    return {in, out};
}

// Profile and field overloads.

inline BoundCertificate check_upper_power(const Profile1D& p, const StripSpec& strip, const CertificateOptions& o = {}) {
    return check_upper_power(samples_of(p, {strip.height}), p.gamma, strip, o);
}
inline BoundCertificate check_upper_power(const Field2D& f, const StripSpec& strip, const CertificateOptions& o = {}) {
    if (strip.height > f.grid.height * (1.0 + 1e-12)) throw ConfigError("strip height exceeds the field height");
    return check_upper_power(samples_of(f), f.gamma, strip, o);
}
inline BoundCertificate check_lower_power(const Profile1D& p, const CertificateOptions& o = {}) {
    return check_lower_power(samples_of(p), p.gamma, o);
}
inline BoundCertificate check_lower_power(const Field2D& f, const CertificateOptions& o = {}) {
    return check_lower_power(samples_of(f), f.gamma, o);
}
inline BoundCertificate check_linear_growth(const Profile1D& p, const StripSpec& strip, const CertificateOptions& o = {}) {
    return check_linear_growth(samples_of(p, {detail::far_threshold(strip, o)}), strip, o);
}
inline BoundCertificate check_linear_growth(const Field2D& f, const StripSpec& strip, const CertificateOptions& o = {}) {
    return check_linear_growth(samples_of(f), strip, o);
}
inline std::pair<BoundCertificate, BoundCertificate> check_gradient(const Profile1D& p, const StripSpec& strip,
                                                                    const CertificateOptions& o = {}) {
    return check_gradient(samples_of(p, {strip.height, detail::far_threshold(strip, o)}), p.gamma, strip, o);
}
inline std::pair<BoundCertificate, BoundCertificate> check_gradient(const Field2D& f, const StripSpec& strip,
                                                                    const CertificateOptions& o = {}) {
    return check_gradient(samples_of(f), f.gamma, strip, o);
}

/// All five certificates in a fixed order: upper, lower, linear growth, gradient strip, gradient far.
template <class Object>
std::vector<BoundCertificate> check_all(const Object& obj, const StripSpec& strip, const CertificateOptions& o = {}) {
    CertificateOptions plain = o;
    plain.claim.reset();
    std::vector<BoundCertificate> out;
    out.push_back(check_upper_power(obj, strip, plain));
    out.push_back(check_lower_power(obj, plain));
    out.push_back(check_linear_growth(obj, strip, plain));
    auto [gi, gf] = check_gradient(obj, strip, plain);
    out.push_back(gi);
    out.push_back(gf);
    return out;
}

// ---------------------------------------------------------------------------------------------
// 1-D eigenfunction subsolution on (center - radius, center + radius)

struct IntervalSubsolution {
    GammaParam gamma;
    double center = 0.0;
    double radius = 1.0;
    double amplitude = 0.0;
    double lambda1 = 0.0;  // pi^2 / (4 radius^2)
    double max_alpha = 0.0;

    [[nodiscard]] double phi(double x) const { return std::cos(std::numbers::pi * (x - center) / (2.0 * radius)); }
    [[nodiscard]] double dphi(double x) const {
        const double k = std::numbers::pi / (2.0 * radius);
        return -k * std::sin(k * (x - center));
    }
    /// w = C phi^(2/(gamma+1)); zero at the endpoints.
    [[nodiscard]] double value(double x) const {
        if (std::abs(x - center) >= radius) return 0.0;
        const double p = std::max(phi(x), 0.0);
        return amplitude * std::pow(p, gamma.alpha_pow);
    }
    /// The verification function; -w'' <= w^-gamma wherever it is <= 1.
    [[nodiscard]] double alpha_at(double x) const { return alpha_at(x, amplitude); }
    [[nodiscard]] double alpha_at(double x, double amp) const {
        const double g = gamma.gamma;
        const double cp = std::pow(amp, g + 1.0);
        const double f = phi(x), df = dphi(x);
        return 2.0 * cp * (g - 1.0) / ((g + 1.0) * (g + 1.0)) * df * df + 2.0 * lambda1 * cp / (g + 1.0) * f * f;
    }
};

/// Largest amplitude (by bisection) with max alpha < 1 - 1e-6 over `samples` points of the
/// closed interval (the centre is always sampled).
inline IntervalSubsolution build_interval_subsolution(const GammaParam& g, double center, double radius,
                                                      std::size_t samples = 10001) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("interval radius must be positive");
    if (samples < 3) throw ConfigError("need at least 3 samples");
    if (samples % 2 == 0) ++samples;
    IntervalSubsolution w;
    w.gamma = g;
    w.center = center;
    w.radius = radius;
    w.lambda1 = std::numbers::pi * std::numbers::pi / (4.0 * radius * radius);
    const double thr = 1.0 - 1e-6;
    auto max_alpha = [&](double amp) {
        double m = 0.0;
        for (std::size_t k = 0; k < samples; ++k) {
            const double x = center - radius + 2.0 * radius * static_cast<double>(k) / static_cast<double>(samples - 1);
            m = std::max(m, w.alpha_at(k == samples / 2 ? center : x, amp));
        }
        return m;
    };
    double lo = 1.0, hi = 1.0;
    while (!(max_alpha(lo) < thr)) lo *= 0.5;
    while (max_alpha(hi) < thr) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (max_alpha(mid) < thr ? lo : hi) = mid;
    }
    w.amplitude = lo;
    w.max_alpha = max_alpha(lo);
    return w;
}

struct SubsolutionCheck {
    double max_rel_residual = 0.0;  // max over samples of (-w''_h - w^-gamma) / w^-gamma
    double spacing = 0.0;           // distance between samples
    double h = 0.0;                 // finite-difference step
    std::size_t samples = 0;
};

/// Three-point residual at the interior nodes of `cells` uniform cells, with difference step
/// spacing / 2^(refinements+1). The samples stay fixed under refinement; only the step shrinks,
/// so the stencil never touches an endpoint, where w ~ dist^(2/(gamma+1)) is not smooth.
inline SubsolutionCheck check_subsolution(const IntervalSubsolution& w, std::size_t cells = 10000,
                                          unsigned refinements = 0) {
    if (cells < 4) throw ConfigError("need at least 4 cells");
    SubsolutionCheck c;
    c.spacing = 2.0 * w.radius / static_cast<double>(cells);
    c.h = std::ldexp(c.spacing, -static_cast<int>(refinements) - 1);
    c.max_rel_residual = -std::numeric_limits<double>::infinity();
    const double a = w.center - w.radius;
    for (std::size_t k = 1; k < cells; ++k) {
        const double x = a + c.spacing * static_cast<double>(k);
        const double um = w.value(x - c.h), u0 = w.value(x), up = w.value(x + c.h);
        const double neg_d2 = (2.0 * u0 - um - up) / (c.h * c.h);
        const double force = std::pow(u0, -w.gamma.gamma);
        c.max_rel_residual = std::max(c.max_rel_residual, (neg_d2 - force) / force);
        ++c.samples;
    }
    return c;
}

}  // namespace halfspace
