#pragma once

// -Laplace(u) = u^-gamma on the rectangle [-W/2, W/2] x [0, H] with u = 0 on the bottom edge and
// Dirichlet data on the lateral and top edges, 5-point stencil, solved between an explicit
// sub- and supersolution.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "core_profiles.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "gamma.hpp"
#include "profile.hpp"

namespace halfspace {

enum class PerturbTarget { lateral, top, both };

inline std::string_view to_string(PerturbTarget t) {
    switch (t) {
        case PerturbTarget::lateral: return "lateral";
        case PerturbTarget::top: return "top";
        case PerturbTarget::both: return "both";
    }
    return "both";
}

inline PerturbTarget perturb_target_from(std::string_view s) {
    if (s == "lateral") return PerturbTarget::lateral;
    if (s == "top") return PerturbTarget::top;
    if (s == "both") return PerturbTarget::both;
    throw ConfigError("unknown perturbation target '" + std::string(s) + "' (lateral, top, both)");
}

/// Discrete 1-D problem (2u_j - u_{j-1} - u_{j+1})/h^2 = u_j^-gamma with u_0 = 0, u_nz = top,
/// solved by Newton from c z^a (tridiagonal). This is the x'-independent solution of the 2-D scheme.
inline std::vector<double> solve_column(const GammaParam& gp, double h, std::size_t nz, double top) {
    if (nz < 2 || !(h > 0.0) || !(top > 0.0)) throw ConfigError("column solve needs nz >= 2, h > 0, top > 0");
    const double gamma = gp.gamma;
    const double h2 = h * h;
    const double height = h * static_cast<double>(nz);
    const double c = std::min(0.5 * gp.c_gamma, top / std::pow(height, gp.alpha_pow));
    std::vector<double> u(nz + 1);
    for (std::size_t j = 0; j <= nz; ++j) u[j] = c * std::pow(h * static_cast<double>(j), gp.alpha_pow);
    u[nz] = top;
    const std::size_t m = nz - 1;
    std::vector<double> diag(m), rhs(m), cp(m), dp(m);
    for (int it = 0; it < 200; ++it) {
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t j = k + 1;
            rhs[k] = -((2.0 * u[j] - u[j - 1] - u[j + 1]) / h2 - std::pow(u[j], -gamma));
            diag[k] = 2.0 / h2 + gamma * std::pow(u[j], -gamma - 1.0);
        }
        // Thomas algorithm, off-diagonals -1/h^2
        const double off = -1.0 / h2;
        cp[0] = off / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (std::size_t k = 1; k < m; ++k) {
            const double den = diag[k] - off * cp[k - 1];
            cp[k] = off / den;
            dp[k] = (rhs[k] - off * dp[k - 1]) / den;
        }
        for (std::size_t k = m - 1; k-- > 0;) dp[k] -= cp[k] * dp[k + 1];
        double change = 0.0, scale = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            u[k + 1] = std::max(u[k + 1] + dp[k], 0.5 * u[k + 1]);
            change = std::max(change, std::abs(dp[k]));
            scale = std::max(scale, u[k + 1]);
        }
        if (change <= 1e-14 * scale) return u;
    }
    throw NumericalError("column solve did not converge");
}

/// Dirichlet data on the lateral columns and the top row.
///
/// Profile-based data put p(H) on the top row. The lateral columns carry the discrete 1-D
/// solution with that top value (discrete_lateral) or the profile itself; either way the
/// optional perturbation multiplies the targeted edges by (1 + a sin(pi x / width)).
struct BoundaryData {
    BoundaryMode mode = BoundaryMode::custom;
    std::optional<Profile1D> profile;
    double amplitude = 0.0;
    double width = 0.0;  // period parameter of the perturbation
    PerturbTarget target = PerturbTarget::both;
    bool discrete_lateral = true;
    std::function<double(double, double, bool)> value;  // custom data: (x, z, on_top_row)

    static BoundaryData oned(const Profile1D& p, bool discrete_lateral = true) {
        validate(p);
        BoundaryData b;
        b.mode = BoundaryMode::oned_profile;
        b.profile = p;
        b.discrete_lateral = discrete_lateral;
        return b;
    }

    static BoundaryData perturbed(const Profile1D& p, double amplitude, double width,
                                  PerturbTarget target = PerturbTarget::both, bool discrete_lateral = true) {
        validate(p);
        if (!(std::abs(amplitude) < 1.0)) throw ConfigError("perturbation amplitude must satisfy |a| < 1");
        if (!(width > 0.0)) throw ConfigError("perturbation width must be positive");
        BoundaryData b;
        b.mode = amplitude == 0.0 ? BoundaryMode::oned_profile : BoundaryMode::perturbed;
        b.profile = p;
        b.amplitude = amplitude;
        b.width = width;
        b.target = target;
        b.discrete_lateral = discrete_lateral;
        return b;
    }

    static BoundaryData custom(std::function<double(double, double, bool)> fn) {
        BoundaryData b;
        b.mode = BoundaryMode::custom;
        b.value = std::move(fn);
        return b;
    }
};

namespace detail {

/// Writes the boundary data into f (bottom row 0) and checks positivity.
inline void apply_boundary(Field2D& f, const BoundaryData& bd) {
    const Grid2D& g = f.grid;
    for (std::size_t i = 0; i <= g.nx; ++i) f.at(i, 0) = 0.0;
    std::function<double(double, double, bool)> fn = bd.value;
    std::vector<double> col;
    if (bd.profile) {
        const Profile1D& p = *bd.profile;
        if (p.t_max() < g.height) throw ConfigError("boundary profile does not reach the grid height");
        const double top = evaluate(p, g.height).v;
        if (bd.discrete_lateral) col = solve_column(f.gamma, g.h, g.nz, top);
        const double a = bd.amplitude, w = bd.width > 0.0 ? bd.width : g.width;
        const PerturbTarget tg = bd.target;
        fn = [&, a, w, tg, top](double x, double z, bool on_top) {
            const double base =
                on_top ? top : (col.empty() ? evaluate(p, z).v : col[static_cast<std::size_t>(std::llround(z / g.h))]);
            const bool hit =
                tg == PerturbTarget::both || (on_top ? tg == PerturbTarget::top : tg == PerturbTarget::lateral);
            return hit && a != 0.0 ? base * (1.0 + a * std::sin(std::numbers::pi * x / w)) : base;
        };
    }
    if (!fn) throw ConfigError("boundary data has no value function");
    auto put = [&](std::size_t i, std::size_t j, bool top) {
        const double v = fn(g.x(i), g.z(j), top);
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError("boundary data must be positive and finite (node " + std::to_string(i) + "," +
                              std::to_string(j) + ")");
        f.at(i, j) = v;
    };
    for (std::size_t j = 1; j < g.nz; ++j) {
        put(0, j, false);
        put(g.nx, j, false);
    }
    for (std::size_t i = 0; i <= g.nx; ++i) put(i, g.nz, true);
}

inline double node_residual(const Field2D& f, std::size_t i, std::size_t j, double gamma) {
    const double h2 = f.grid.h * f.grid.h;
    const double u = f.at(i, j);
    const double lap = 4.0 * u - f.at(i - 1, j) - f.at(i + 1, j) - f.at(i, j - 1) - f.at(i, j + 1);
    return lap / h2 - std::pow(u, -gamma);
}

template <class Fn>
void for_interior(const Grid2D& g, Fn&& fn) {
    for (std::size_t j = 1; j < g.nz; ++j)
        for (std::size_t i = 1; i < g.nx; ++i) fn(i, j);
}

}  // namespace detail

/// Sup-norm of the discrete nonlinear residual over interior nodes.
inline double residual_sup(const Field2D& f) {
    double r = 0.0;
    detail::for_interior(f.grid, [&](std::size_t i, std::size_t j) {
        r = std::max(r, std::abs(detail::node_residual(f, i, j, f.gamma.gamma)));
    });
    return r;
}

/// Samples a 1-D profile onto every node (values depend on z only).
inline Field2D field_from_profile(const Grid2D& g, const Profile1D& p) {
    Field2D f;
    f.grid = g;
    f.gamma = p.gamma;
    f.boundary_mode = BoundaryMode::oned_profile;
    f.values.assign(g.nodes(), 0.0);
    for (std::size_t j = 1; j <= g.nz; ++j) {
        const double v = evaluate(p, g.z(j)).v;
        for (std::size_t i = 0; i <= g.nx; ++i) f.at(i, j) = v;
    }
    return f;
}

struct Bracket {
    Field2D sub;
    Field2D super;
    double sub_coefficient = 0.0;   // c in c z^a
    BarrierSpec barrier;            // super = beta C (z + eps)^a
    double beta_min = 0.0;          // smallest beta with super >= data on the edges
    bool sub_is_subsolution = false;
    bool super_is_supersolution = false;
};

/// Smallest beta for which beta C (z + eps)^a dominates the boundary data.
inline double minimal_beta(const GammaParam& gp, const Grid2D& g, const BoundaryData& bd, double eps = 0.0) {
    Field2D data;
    data.grid = g;
    data.gamma = gp;
    data.values.assign(g.nodes(), 0.0);
    detail::apply_boundary(data, bd);
    double ratio = 0.0;
    for (std::size_t j = 1; j <= g.nz; ++j)
        for (std::size_t i = 0; i <= g.nx; ++i)
            if (g.on_boundary(i, j)) ratio = std::max(ratio, data.at(i, j) / eval_power(gp, g.z(j) + eps).value);
    return ratio;
}

/// beta = minimal_beta rounded up to a multiple of 0.01, and strictly above 1.
inline BarrierSpec admissible_barrier(const GammaParam& gp, const Grid2D& g, const BoundaryData& bd,
                                      double eps = 0.0) {
    const double need = minimal_beta(gp, g, bd, eps);
    double beta = std::ceil(need * 100.0 - 1e-9) / 100.0;
    if (beta < need) beta += 0.01;
    if (!(beta > 1.0)) beta = 1.01;
    return BarrierSpec::make(beta, eps);
}

/// Sub: c z^a with c <= C/2 and below the data, halved until it is a discrete subsolution.
/// Super: beta C (z + eps)^a. Both carry the boundary data on the lateral and top edges.
inline Bracket initial_bracket(const GammaParam& gp, const Grid2D& g, const BarrierSpec& b, const BoundaryData& bd) {
    Bracket br;
    br.beta_min = minimal_beta(gp, g, bd, b.eps);
    if (b.beta < br.beta_min)
        throw ConfigError("bracket inverted: beta=" + std::to_string(b.beta) + " is below the minimal admissible beta " +
                          std::to_string(br.beta_min));
    br.barrier = b;
    const double a = gp.alpha_pow;

    Field2D base;
    base.grid = g;
    base.gamma = gp;
    base.boundary_mode = bd.mode;
    base.values.assign(g.nodes(), 0.0);
    detail::apply_boundary(base, bd);

    double c = 0.5 * gp.c_gamma;
    for (std::size_t j = 1; j <= g.nz; ++j)
        for (std::size_t i = 0; i <= g.nx; ++i)
            if (g.on_boundary(i, j)) c = std::min(c, base.at(i, j) / std::pow(g.z(j), a));

    br.super = base;
    detail::for_interior(g, [&](std::size_t i, std::size_t j) {
        br.super.at(i, j) = b.beta * gp.c_gamma * std::pow(g.z(j) + b.eps, a);
    });
    br.super_is_supersolution = true;
    detail::for_interior(g, [&](std::size_t i, std::size_t j) {
        if (detail::node_residual(br.super, i, j, gp.gamma) < 0.0) br.super_is_supersolution = false;
    });

    for (int attempt = 0; attempt < 60; ++attempt) {
        br.sub = base;
        detail::for_interior(g, [&](std::size_t i, std::size_t j) { br.sub.at(i, j) = c * std::pow(g.z(j), a); });
        bool ok = true;
        detail::for_interior(g, [&](std::size_t i, std::size_t j) {
            if (detail::node_residual(br.sub, i, j, gp.gamma) > 0.0) ok = false;
        });
        if (ok) {
            br.sub_is_subsolution = true;
            break;
        }
        c *= 0.5;
    }
    br.sub_coefficient = c;
    if (!br.sub_is_subsolution) throw NumericalError("no discrete subsolution of the form c z^a found");
    return br;
}

enum class SolveMethod { newton, nodewise };

inline std::string_view to_string(SolveMethod m) { return m == SolveMethod::newton ? "newton" : "nodewise"; }

inline SolveMethod solve_method_from(std::string_view s) {
    if (s == "newton") return SolveMethod::newton;
    if (s == "nodewise") return SolveMethod::nodewise;
    throw ConfigError("unknown solve method '" + std::string(s) + "' (newton, nodewise)");
}

struct SolveSpec {
    double tol = 1e-11;            // stop when sup |change| <= tol * max(1, sup |u|)
    std::size_t max_iter = 100;    // Newton iterations
    std::size_t max_sweeps = 200000;
    SolveMethod method = SolveMethod::newton;
    std::optional<BarrierSpec> barrier;  // default: admissible_barrier with eps = 0

    void validate() const {
        if (!(tol > 0.0)) throw ConfigError("solver tolerance must be positive");
        if (max_iter == 0 || max_sweeps == 0) throw ConfigError("iteration limits must be positive");
    }
};

struct IterationReport {
    std::vector<double> residual_history;  // sup-norm residual of each iterate, starting from the sub
    bool monotone = true;                  // each iterate >= the previous one nodewise
    bool residual_monotone = true;         // residual non-increasing after the first step
    bool ordered_between_barriers = true;
    std::size_t iterations = 0;
    double final_change = 0.0;
    std::size_t projections = 0;
    std::size_t projections_after_first = 0;
    std::string method;
    double beta = 0.0;
    double sub_coefficient = 0.0;
    bool converged = false;
};

namespace detail {

inline bool nonincreasing_after_first(const std::vector<double>& r, double floor) {
    for (std::size_t k = 2; k < r.size(); ++k)
        if (r[k] > r[k - 1] * (1.0 + 1e-9) + floor) return false;
    return true;
}

inline void solve_newton(Field2D& u, const Bracket& br, const SolveSpec& spec, IterationReport& rep) {
    const Grid2D& g = u.grid;
    const double gamma = u.gamma.gamma;
    const double h2 = g.h * g.h;
    const std::size_t mx = g.nx - 1, mz = g.nz - 1;
    const auto n = static_cast<Eigen::Index>(mx * mz);
    auto id = [mx](std::size_t i, std::size_t j) { return static_cast<Eigen::Index>((j - 1) * mx + (i - 1)); };

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(n) * 5);
    for_interior(g, [&](std::size_t i, std::size_t j) {
        const auto k = id(i, j);
        trip.emplace_back(k, k, 4.0 / h2);
        if (i > 1) trip.emplace_back(k, id(i - 1, j), -1.0 / h2);
        if (i + 1 < g.nx) trip.emplace_back(k, id(i + 1, j), -1.0 / h2);
        if (j > 1) trip.emplace_back(k, id(i, j - 1), -1.0 / h2);
        if (j + 1 < g.nz) trip.emplace_back(k, id(i, j + 1), -1.0 / h2);
    });
    Eigen::SparseMatrix<double> lap(n, n);
    lap.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseMatrix<double> jac = lap;
    std::vector<double*> diag(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) diag[static_cast<std::size_t>(k)] = &jac.coeffRef(k, k);

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.analyzePattern(jac);
    Eigen::VectorXd rhs(n), step(n);

    for (std::size_t it = 0; it < spec.max_iter; ++it) {
        double res = 0.0;
        for_interior(g, [&](std::size_t i, std::size_t j) {
            const double r = node_residual(u, i, j, gamma);
            res = std::max(res, std::abs(r));
            const auto k = id(i, j);
            rhs[k] = -r;
            *diag[static_cast<std::size_t>(k)] = 4.0 / h2 + gamma * std::pow(u.at(i, j), -gamma - 1.0);
        });
        rep.residual_history.push_back(res);
        solver.factorize(jac);
        if (solver.info() != Eigen::Success) throw NumericalError("Newton: sparse factorization failed");
        step = solver.solve(rhs);
        double change = 0.0, scale = 1.0;
        std::size_t proj = 0;
        for_interior(g, [&](std::size_t i, std::size_t j) {
            const double s = step[id(i, j)];
            double& v = u.at(i, j);
            if (s < -1e-12 * std::max(1.0, v)) rep.monotone = false;
            double next = v + s;
            const double lo = br.sub.at(i, j), hi = br.super.at(i, j);
            if (next < lo || next > hi) {
                // damp by halves back toward the bracket, then project
                double damped = s;
                for (int k = 0; k < 30 && (v + damped < lo || v + damped > hi); ++k) damped *= 0.5;
                next = std::clamp(v + damped, lo, hi);
                ++proj;
            }
            change = std::max(change, std::abs(next - v));
            v = next;
            scale = std::max(scale, std::abs(v));
        });
        rep.projections += proj;
        if (it > 0) rep.projections_after_first += proj;
        rep.iterations = it + 1;
        rep.final_change = change;
        if (change <= spec.tol * scale) {
            rep.converged = true;
            break;
        }
    }
}

inline void solve_nodewise(Field2D& u, const Bracket& br, const SolveSpec& spec, IterationReport& rep) {
    const Grid2D& g = u.grid;
    const double gamma = u.gamma.gamma;
    const double h2 = g.h * g.h;
    rep.residual_history.push_back(residual_sup(u));
    for (std::size_t sweep = 0; sweep < spec.max_sweeps; ++sweep) {
        double change = 0.0, scale = 1.0;
        std::size_t proj = 0;
        for (std::size_t color = 0; color < 2; ++color) {
            for (std::size_t j = 1; j < g.nz; ++j) {
                for (std::size_t i = 1 + (j + 1 + color) % 2; i < g.nx; i += 2) {
                    const double nb = u.at(i - 1, j) + u.at(i + 1, j) + u.at(i, j - 1) + u.at(i, j + 1);
                    const double lo = br.sub.at(i, j), hi = br.super.at(i, j);
                    const double old = u.at(i, j);
                    double v = old;
                    for (int k = 0; k < 8; ++k) {
                        const double f = (4.0 * v - nb) / h2 - std::pow(v, -gamma);
                        const double df = 4.0 / h2 + gamma * std::pow(v, -gamma - 1.0);
                        double s = -f / df;
                        bool damped = false;
                        while ((v + s < lo || v + s > hi) && std::abs(s) > 1e-300) {
                            s *= 0.5;
                            damped = true;
                            if (std::abs(s) < 1e-16 * std::abs(v)) break;
                        }
                        double next = v + s;
                        if (next < lo || next > hi) {
                            next = std::clamp(next, lo, hi);
                            ++proj;
                        } else if (damped) {
                            ++proj;
                        }
                        const bool done = std::abs(next - v) <= 1e-15 * std::abs(v);
                        v = next;
                        if (done) break;
                    }
                    if (v < old) rep.monotone = false;
                    change = std::max(change, std::abs(v - old));
                    scale = std::max(scale, std::abs(v));
                    u.at(i, j) = v;
                }
            }
        }
        rep.projections += proj;
        if (sweep > 0) rep.projections_after_first += proj;
        rep.residual_history.push_back(residual_sup(u));
        rep.iterations = sweep + 1;
        rep.final_change = change;
        if (change <= spec.tol * scale) {
            rep.converged = true;
            break;
        }
    }
}

}  // namespace detail

struct SolveResult {
    Field2D field;
    IterationReport report;
    Bracket bracket;
};

/// Solves from the subsolution upward. The default Newton iteration on the whole grid keeps
/// every iterate a subsolution (the discrete operator is concave in u with an M-matrix Jacobian),
/// so iterates increase monotonically inside the bracket; `nodewise` runs red-black sweeps of a
/// scalar Newton solve per node, damped and projected into the bracket.
inline SolveResult solve(const GammaParam& gp, const Grid2D& g, const BoundaryData& bd, const SolveSpec& spec = {}) {
    spec.validate();
    const BarrierSpec barrier = spec.barrier ? *spec.barrier : admissible_barrier(gp, g, bd);
    SolveResult out;
    out.bracket = initial_bracket(gp, g, barrier, bd);
    out.field = out.bracket.sub;
    out.field.boundary_mode = bd.mode;
    IterationReport& rep = out.report;
    rep.method = std::string(to_string(spec.method));
    rep.beta = barrier.beta;
    rep.sub_coefficient = out.bracket.sub_coefficient;
    if (spec.method == SolveMethod::newton)
        detail::solve_newton(out.field, out.bracket, spec, rep);
    else
        detail::solve_nodewise(out.field, out.bracket, spec, rep);
    const double last = residual_sup(out.field);
    rep.residual_history.push_back(last);

    double umax = 0.0;
    for (double v : out.field.values) umax = std::max(umax, std::abs(v));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * umax / (g.h * g.h);
    rep.residual_monotone = detail::nonincreasing_after_first(rep.residual_history, floor);
    for (std::size_t k = 0; k < out.field.values.size(); ++k)
        if (out.field.values[k] < out.bracket.sub.values[k] || out.field.values[k] > out.bracket.super.values[k])
            rep.ordered_between_barriers = false;
    if (!rep.converged)
        throw NumericalError("half-plane solve did not converge in " + std::to_string(rep.iterations) +
                             " iterations (last change " + std::to_string(rep.final_change) + ")");
    return out;
}

struct SymmetryDeviation {
    std::vector<double> z;        // row heights, bottom row excluded
    std::vector<double> per_row;  // max |u - mean| / mean over the central columns
    double max_dev = 0.0;
};

/// Row-wise relative spread over the central half |x'| <= width/4, which keeps the lateral
/// boundary layer out of the measurement.
inline SymmetryDeviation symmetry_deviation(const Field2D& f) {
    const Grid2D& g = f.grid;
    const double xlim = 0.25 * g.width * (1.0 + 1e-12);
    SymmetryDeviation out;
    for (std::size_t j = 1; j <= g.nz; ++j) {
        double sum = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i <= g.nx; ++i)
            if (std::abs(g.x(i)) <= xlim) {
                sum += f.at(i, j);
                ++cnt;
            }
        const double mean = sum / static_cast<double>(cnt);
        double dev = 0.0;
        for (std::size_t i = 0; i <= g.nx; ++i)
            if (std::abs(g.x(i)) <= xlim) dev = std::max(dev, std::abs(f.at(i, j) - mean) / mean);
        out.z.push_back(g.z(j));
        out.per_row.push_back(dev);
        out.max_dev = std::max(out.max_dev, dev);
    }
    return out;
}

/// sup / inf of the field over the nodes of the closed disk around node (ci, cj).
inline double harnack_ratio(const Field2D& f, std::size_t ci, std::size_t cj, double radius) {
    const Grid2D& g = f.grid;
    if (!(radius > 0.0)) throw ConfigError("Harnack disk radius must be positive");
    if (ci > g.nx || cj > g.nz) throw ConfigError("Harnack disk centre outside the grid");
    const double xc = g.x(ci), zc = g.z(cj);
    if (zc < 2.0 * radius * (1.0 - 1e-12))
        throw ConfigError("Harnack disk too close to the bottom edge (centre height must be >= 2 radius)");
    if (xc - radius < g.x(0) - 1e-12 || xc + radius > g.x(g.nx) + 1e-12 || zc + radius > g.height + 1e-12)
        throw ConfigError("Harnack disk exits the domain");
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    const double r2 = radius * radius * (1.0 + 1e-12);
    for (std::size_t j = 0; j <= g.nz; ++j)
        for (std::size_t i = 0; i <= g.nx; ++i) {
            const double dx = g.x(i) - xc, dz = g.z(j) - zc;
            if (dx * dx + dz * dz > r2) continue;
            hi = std::max(hi, f.at(i, j));
            lo = std::min(lo, f.at(i, j));
        }
    if (!(lo > 0.0)) throw InvariantViolation("Harnack disk contains a nonpositive value");
    return hi / lo;
}

struct ProfileError {
    double sup_abs = 0.0;
    double sup_rel = 0.0;
};

/// Sup error of the field against a 1-D profile over rows j >= min_row.
inline ProfileError compare_to_profile(const Field2D& f, const Profile1D& p, std::size_t min_row = 1) {
    ProfileError e;
    const Grid2D& g = f.grid;
    for (std::size_t j = std::max<std::size_t>(min_row, 1); j <= g.nz; ++j) {
        const double v = evaluate(p, g.z(j)).v;
        for (std::size_t i = 0; i <= g.nx; ++i) {
            const double d = std::abs(f.at(i, j) - v);
            e.sup_abs = std::max(e.sup_abs, d);
            e.sup_rel = std::max(e.sup_rel, d / v);
        }
    }
    return e;
}

}  // namespace halfspace
