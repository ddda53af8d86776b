// halfspace: batch front end for the 1-D solution family, the bound certificates and the
// half-plane solver.
//
// exit codes: 0 ok, 1 numerical failure, 2 configuration or parse error

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <halfspace/halfspace.hpp>

namespace hs = halfspace;
using hs::io::json;

namespace {

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    hs::io::write_file(path, content);
}

std::string profile_csv(const hs::Profile1D& p) {
    std::ostringstream os;
    hs::io::write_profile_csv(os, p);
    return os.str();
}

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw hs::ConfigError(what + ": " + e.what());
    }
}

enum class InputKind { profile, field };

struct Input {
    InputKind kind = InputKind::profile;
    hs::Profile1D profile;
    hs::Field2D field;
};

/// Profile or field, from JSON (by extension) or CSV (by header).
Input load_input(const std::string& path, double gamma) {
    const std::string text = hs::io::read_file(path);
    Input in;
    if (ends_with(path, ".json")) {
        const json j = parse_json_text(text, path);
        if (j.contains("nx") && j.contains("values")) {
            in.kind = InputKind::field;
            in.field = hs::io::field_from_json(j);
        } else {
            in.profile = hs::io::profile_from_json(j);
        }
        return in;
    }
    const auto g = hs::GammaParam::make(gamma);
    std::istringstream ss(text);
    const auto nl = text.find('\n');
    std::string head = text.substr(0, nl);
    while (!head.empty() && (head.back() == '\r' || head.back() == ' ')) head.pop_back();
    if (head == "x,z,u") {
        in.kind = InputKind::field;
        in.field = hs::io::read_field_csv(ss, g);
    } else {
        in.profile = hs::io::read_profile_csv(ss, g);
        if (in.profile.size() > 1) in.profile.limit_slope = hs::limit_slope(in.profile);
    }
    return in;
}

hs::svg::Series profile_series(const std::string& label, const hs::Profile1D& p) {
    hs::svg::Series s;
    s.label = label;
    s.x = p.grid;
    s.y = p.values;
    return s;
}

std::string slope_tag(double m) {
    std::string s = hs::io::format_double(m);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

/// Fills options the command line left unset from the JSON config. Keys may sit at top level or
/// under a section named after the subcommand; the section wins over the top level.
void apply_config(const std::string& path, CLI::App& app, CLI::App* sub) {
    const json j = parse_json_text(hs::io::read_file(path), path);
    if (!j.is_object()) throw hs::ConfigError(path + ": config must be a JSON object");
    std::map<std::string, json> merged;
    std::vector<std::string> subnames;
    for (auto* s : app.get_subcommands({})) subnames.push_back(s->get_name());
    auto is_sub = [&](const std::string& k) {
        for (const auto& n : subnames)
            if (n == k) return true;
        return false;
    };
    for (const auto& [k, v] : j.items())
        if (!is_sub(k)) merged[k] = v;
    if (j.contains(sub->get_name())) {
        const auto& sec = j.at(sub->get_name());
        if (!sec.is_object()) throw hs::ConfigError(path + ": section '" + sub->get_name() + "' must be an object");
        for (const auto& [k, v] : sec.items()) merged[k] = v;
    }
    auto known_elsewhere = [&](const std::string& name) {
        for (auto* s : app.get_subcommands({}))
            if (s != sub && s->get_option_no_throw(name) != nullptr) return true;
        return false;
    };
    for (const auto& [key, value] : merged) {
        std::string name = "--" + key;
        for (char& c : name)
            if (c == '_') c = '-';
        if (name == "--config") continue;
        CLI::Option* opt = sub->get_option_no_throw(name);
        if (opt == nullptr) {
            if (known_elsewhere(name)) continue;
            throw hs::ConfigError(path + ": unknown config key '" + key + "' for '" + sub->get_name() + "'");
        }
        if (opt->count() > 0) continue;  // flags override the file
        auto as_text = [&](const json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
            if (v.is_number()) return v.dump();
            throw hs::ConfigError(path + ": config key '" + key + "' has an unsupported value");
        };
        if (value.is_array()) {
            for (const auto& v : value) opt->add_result(as_text(v));
        } else {
            opt->add_result(as_text(value));
        }
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw hs::ConfigError(path + ": config key '" + key + "': " + e.what());
        }
    }
}

// ---------------------------------------------------------------------------------------------

struct ExactCfg {
    double gamma = 2.0;
    double t_max = 10.0;
    std::size_t n = 1000;
    std::string out = "-";
    std::string json_out;
    std::string svg;
};

int cmd_exact(const ExactCfg& c) {
    const auto g = hs::GammaParam::make(c.gamma);
    if (!(c.t_max > 0.0)) throw hs::ConfigError("--t-max must be positive");
    if (c.n < 1) throw hs::ConfigError("--n must be at least 1");
    const auto p = hs::sample_power(g, hs::uniform_grid(c.t_max, c.n));
    emit(c.out, profile_csv(p));
    emit(c.json_out, hs::io::dump(hs::io::profile_json(p)));
    if (!c.svg.empty())
        emit(c.svg, hs::svg::render({"power solution, gamma=" + hs::io::format_double(c.gamma), "t", "v"},
                                    {profile_series("C t^(2/(gamma+1))", p)}));
    return 0;
}

struct ShootCfg {
    double gamma = 2.0;
    double slope = 1.0;
    double tol = 1e-6;
    double horizon = 1e4;
    double seed_factor = 2.0;
    double seed_tangent = 2.0;
    std::string out = "-";
    std::string report;
    std::string route_b_out;
    std::string json_out;
    std::string svg;
};

int cmd_shoot(const ShootCfg& c) {
    const auto g = hs::GammaParam::make(c.gamma);
    if (!(c.slope > 0.0) || !std::isfinite(c.slope)) throw hs::ConfigError("--slope must be positive");
    hs::ShootSpec spec;
    spec.rel_tol = c.tol;
    spec.horizon = c.horizon;
    spec.validate();
    hs::RouteASeed seed;
    seed.value_factor = c.seed_factor;
    seed.tangent_factor = c.seed_tangent;
    const auto r = hs::shoot_both_routes(g, c.slope, spec, seed);
    emit(c.out, profile_csv(r.profile));
    emit(c.route_b_out, profile_csv(r.route_b));
    emit(c.json_out, hs::io::dump(hs::io::profile_json(r.profile)));
    const std::string rep = hs::io::dump(hs::io::shoot_report_json(r.report));
    if (c.report.empty())
        std::cerr << rep;
    else
        emit(c.report, rep);
    if (!c.svg.empty()) {
        hs::svg::PlotSpec ps{"prescribed slope M=" + hs::io::format_double(c.slope), "t", "v", true, true};
        emit(c.svg, hs::svg::render(ps, {profile_series("route A", r.profile), profile_series("route B", r.route_b)}));
    }
    if (r.report.discrepancy_sup_rel > 10.0 * spec.rel_tol) {
        std::cerr << "error: route A and route B disagree (sup-relative " << r.report.discrepancy_sup_rel
                  << " > 10 tol)\n";
        return 1;
    }
    return 0;
}

struct ScaleCfg {
    std::string in;
    double gamma = 2.0;
    double lambda = 0.0;
    double to_slope = 0.0;
    std::string out = "-";
    std::string json_out;
};

int cmd_scale(const ScaleCfg& c) {
    auto input = load_input(c.in, c.gamma);
    if (input.kind != InputKind::profile) throw hs::ConfigError("scale expects a 1-D profile");
    const auto& p = input.profile;
    double lambda = c.lambda;
    if (c.to_slope != 0.0) {
        if (lambda != 0.0) throw hs::ConfigError("give either --lambda or --to-slope, not both");
        if (!(c.to_slope > 0.0)) throw hs::ConfigError("--to-slope must be positive");
        const double l = hs::limit_slope(p);
        if (!(l > 0.0)) throw hs::ConfigError("profile has zero limit slope; the power solution is scale invariant");
        lambda = std::pow(c.to_slope / l, (p.gamma.gamma + 1.0) / (p.gamma.gamma - 1.0));
    }
    if (lambda == 0.0) throw hs::ConfigError("give --lambda or --to-slope");
    const auto q = hs::rescale(p, lambda);
    emit(c.out, profile_csv(q));
    emit(c.json_out, hs::io::dump(hs::io::profile_json(q)));
    return 0;
}

struct VerifyCfg {
    std::string in;
    double gamma = 2.0;
    double strip_height = 1.0;
    double far_threshold = 0.0;
    double fit_lo = 0.0;
    double fit_hi = 0.0;
    double drift_tol = 0.01;
    std::string out = "-";
};

int cmd_verify(const VerifyCfg& c) {
    const auto input = load_input(c.in, c.gamma);
    const auto strip = hs::StripSpec::make(c.strip_height);
    hs::CertificateOptions o;
    o.drift_tol = c.drift_tol;
    if (c.far_threshold > 0.0) o.far_threshold = c.far_threshold;
    if (c.fit_hi > 0.0) {
        if (!(c.fit_lo > 0.0 && c.fit_lo < c.fit_hi)) throw hs::ConfigError("need 0 < --fit-lo < --fit-hi");
        o.fit_window = std::pair{c.fit_lo, c.fit_hi};
    }
    const auto certs = input.kind == InputKind::profile ? hs::check_all(input.profile, strip, o)
                                                        : hs::check_all(input.field, strip, o);
    emit(c.out, hs::io::dump(hs::io::certificates_json(certs)));
    for (const auto& ct : certs)
        if (!ct.pass) {
            std::cerr << "certificate " << hs::to_string(ct.kind) << " failed (margin " << ct.margin << ")\n";
            return 1;
        }
    return 0;
}

struct HalfplaneCfg {
    double gamma = 2.0;
    double slope = 1.0;
    double width = 8.0;
    double height = 4.0;
    double h = 0.0625;
    double perturb = 0.0;
    std::string perturb_target = "both";
    std::string method = "newton";
    double tol = 1e-11;
    std::string out = "-";
    std::string field_json;
    std::string report;
    std::string symmetry;
    std::string svg;
};

json harnack_scan(const hs::Field2D& f) {
    json a = json::array();
    const auto& g = f.grid;
    for (double z : {1.0, 2.0, 3.0}) {
        const double r = z / 4.0;
        const auto j = static_cast<std::size_t>(std::llround(z / g.h));
        if (j > g.nz || std::abs(g.z(j) - z) > 1e-9 || z + r > g.height) continue;
        a.push_back({{"z", z}, {"radius", r}, {"ratio", hs::io::num(hs::harnack_ratio(f, g.nx / 2, j, r))}});
    }
    return a;
}

int cmd_halfplane(const HalfplaneCfg& c) {
    const auto g = hs::GammaParam::make(c.gamma);
    const auto grid = hs::build_grid(c.width, c.height, c.h);
    if (c.slope < 0.0 || !std::isfinite(c.slope)) throw hs::ConfigError("--slope must be >= 0 (0: power data)");
    hs::SolveSpec ss;
    ss.tol = c.tol;
    ss.method = hs::solve_method_from(c.method);
    const auto target = hs::perturb_target_from(c.perturb_target);
    hs::Profile1D prof;
    if (c.slope == 0.0) {
        prof = hs::sample_power(g, hs::log_grid(1e-9, std::max(2.0 * c.height, 1.0), 4000));
        prof.grid.insert(prof.grid.begin(), 0.0);
        prof.values.insert(prof.values.begin(), 0.0);
        prof.derivs.insert(prof.derivs.begin(), std::numeric_limits<double>::infinity());
    } else {
        hs::ShootSpec sp;
        sp.horizon = std::max(1e4, 2.0 * c.height);
        prof = hs::solve_prescribed_slope(g, c.slope, sp).profile;
    }
    const auto bd = c.perturb == 0.0 ? hs::BoundaryData::oned(prof)
                                     : hs::BoundaryData::perturbed(prof, c.perturb, c.width, target);
    const auto r = hs::solve(g, grid, bd, ss);
    const auto sym = hs::symmetry_deviation(r.field);
    {
        std::ostringstream os;
        hs::io::write_field_csv(os, r.field);
        emit(c.out, os.str());
    }
    emit(c.field_json, hs::io::dump(hs::io::field_json(r.field)));
    if (!c.symmetry.empty()) {
        std::ostringstream os;
        hs::io::write_symmetry_csv(os, sym);
        emit(c.symmetry, os.str());
    }
    json rep;
    rep["iteration"] = hs::io::iteration_report_json(r.report);
    rep["symmetry"] = hs::io::symmetry_json(sym);
    rep["max_dev"] = hs::io::num(sym.max_dev);
    rep["harnack"] = harnack_scan(r.field);
    rep["grid"] = {{"width", c.width}, {"height", c.height}, {"h", c.h}, {"nx", grid.nx}, {"nz", grid.nz}};
    rep["boundary"] = {{"slope", c.slope}, {"perturb", c.perturb}, {"target", c.perturb_target}};
    const std::string text = hs::io::dump(rep);
    if (c.report.empty())
        std::cerr << text;
    else
        emit(c.report, text);
    if (!c.svg.empty()) {
        hs::svg::Series s{"central-half deviation", sym.z, sym.per_row};
        emit(c.svg, hs::svg::render({"symmetry deviation per row", "x_N", "max |u - mean| / mean", false, true}, {s}));
    }
    return 0;
}

struct ReportCfg {
    double gamma = 2.0;
    std::vector<double> slopes{0.5, 1.0, 4.0};
    std::string out_dir;
    double strip_height = 1.0;
    double far_threshold = 2e3;
    bool halfplane = false;
    double h = 0.0625;
};

int cmd_report(const ReportCfg& c) {
    const auto g = hs::GammaParam::make(c.gamma);
    if (c.out_dir.empty()) throw hs::ConfigError("--out-dir is required");
    const std::string dir = c.out_dir + "/";
    const auto strip = hs::StripSpec::make(c.strip_height);
    hs::CertificateOptions o;
    o.far_threshold = c.far_threshold;

    hs::ShootSpec sp;
    auto power = hs::sample_power(g, hs::log_grid(1e-8, sp.horizon, 2400));
    power.grid.insert(power.grid.begin(), 0.0);
    power.values.insert(power.values.begin(), 0.0);
    power.derivs.insert(power.derivs.begin(), std::numeric_limits<double>::infinity());

    json summary;
    summary["gamma"] = c.gamma;
    summary["c_gamma"] = hs::io::num(g.c_gamma);
    double lam_max = 1.0;
    for (double m : c.slopes) lam_max = std::max(lam_max, std::pow(m, (c.gamma + 1.0) / (c.gamma - 1.0)));
    hs::ShootSpec wide = sp;
    wide.horizon = std::clamp(20.0 * lam_max, sp.horizon, 1e8);
    const auto family = hs::Family::make(g, wide);

    json certs, shoots, classes = json::array();
    std::vector<hs::svg::Series> vs, ratio;
    auto add = [&](const std::string& name, const hs::Profile1D& p) {
        emit(dir + name + ".csv", profile_csv(p));
        certs[name] = hs::io::certificates_json(hs::check_all(p, strip, o));
        vs.push_back(profile_series(name, p));
        hs::svg::Series r{name, {}, {}};
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p.grid[i] > 0.0) {
                r.x.push_back(p.grid[i]);
                r.y.push_back(p.values[i] / std::pow(p.grid[i], g.alpha_pow));
            }
        ratio.push_back(std::move(r));
        const auto cl = hs::classify(p, family);
        classes.push_back({{"profile", name},
                           {"limit_slope", hs::io::num(cl.slope)},
                           {"class", std::string(hs::to_string(cl.cls))},
                           {"discrepancy", hs::io::num(cl.discrepancy())}});
    };
    add("power", power);
    for (double m : c.slopes) {
        if (!(m > 0.0)) throw hs::ConfigError("--slopes must be positive");
        const auto r = hs::solve_prescribed_slope(g, m, sp);
        const std::string name = "slope_" + slope_tag(m);
        add(name, r.profile);
        shoots[name] = hs::io::shoot_report_json(r.report);
    }
    summary["profiles"] = classes;
    summary["shoot"] = shoots;
    emit(dir + "certificates.json", hs::io::dump(certs));
    emit(dir + "profiles.svg", hs::svg::render({"1-D solutions", "t", "v", true, true}, vs));
    emit(dir + "power_ratio.svg", hs::svg::render({"v / t^(2/(gamma+1))", "t", "ratio", true, true}, ratio));

    if (c.halfplane) {
        const auto base = hs::solve_prescribed_slope(g, 1.0, sp).profile;
        json decay = json::array();
        std::vector<hs::svg::Series> curves;
        for (double w : {8.0, 16.0}) {
            const auto grid = hs::build_grid(w, 4.0, c.h);
            const auto r = hs::solve(g, grid, hs::BoundaryData::perturbed(base, 0.2, w, hs::PerturbTarget::lateral));
            const auto sym = hs::symmetry_deviation(r.field);
            decay.push_back({{"width", w}, {"max_dev", hs::io::num(sym.max_dev)}});
            curves.push_back({"width " + hs::io::format_double(w), sym.z, sym.per_row});
        }
        summary["symmetry_decay_lateral"] = decay;
        emit(dir + "symmetry.svg",
             hs::svg::render({"symmetry deviation, lateral perturbation 0.2", "x_N", "deviation", false, true}, curves));
    }
    emit(dir + "summary.json", hs::io::dump(summary));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solutions of -u'' = u^-gamma on the half-line and -Laplace u = u^-gamma on half-plane rectangles"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config;
    app.add_option("--config", config, "JSON config file (flags override its values)");

    ExactCfg ex;
    auto* s_exact = app.add_subcommand("exact", "sample the power solution C t^(2/(gamma+1))");
    s_exact->add_option("--gamma", ex.gamma, "singularity exponent (> 1)")->capture_default_str();
    s_exact->add_option("--t-max", ex.t_max, "right end of the uniform grid")->capture_default_str();
    s_exact->add_option("--n", ex.n, "number of cells")->capture_default_str();
    s_exact->add_option("--out", ex.out, "profile CSV ('-' for stdout)")->capture_default_str();
    s_exact->add_option("--json", ex.json_out, "profile JSON");
    s_exact->add_option("--svg", ex.svg, "plot");

    ShootCfg sh;
    auto* s_shoot = app.add_subcommand("shoot", "solution with v(0)=0 and prescribed slope at infinity");
    s_shoot->add_option("--gamma", sh.gamma, "singularity exponent (> 1)")->capture_default_str();
    s_shoot->add_option("--slope", sh.slope, "slope M at infinity (> 0)")->capture_default_str();
    s_shoot->add_option("--tol", sh.tol, "relative accuracy target")->capture_default_str();
    s_shoot->add_option("--horizon", sh.horizon, "far-field truncation")->capture_default_str();
    s_shoot->add_option("--seed-factor", sh.seed_factor, "route-A seed v(1) = k w(1)")->capture_default_str();
    s_shoot->add_option("--seed-tangent", sh.seed_tangent, "route-A seed v'(1) = q v(1)")->capture_default_str();
    s_shoot->add_option("--out", sh.out, "profile CSV ('-' for stdout)")->capture_default_str();
    s_shoot->add_option("--report", sh.report, "report JSON (default: stderr)");
    s_shoot->add_option("--route-b-out", sh.route_b_out, "route-B profile CSV");
    s_shoot->add_option("--json", sh.json_out, "profile JSON");
    s_shoot->add_option("--svg", sh.svg, "plot");

    ScaleCfg sc;
    auto* s_scale = app.add_subcommand("scale", "apply t -> lambda^(-2/(gamma+1)) v(lambda t) to a profile");
    s_scale->add_option("--in", sc.in, "profile CSV or JSON")->required();
    s_scale->add_option("--gamma", sc.gamma, "exponent for CSV input")->capture_default_str();
    s_scale->add_option("--lambda", sc.lambda, "scaling factor");
    s_scale->add_option("--to-slope", sc.to_slope, "choose lambda so the limit slope becomes this value");
    s_scale->add_option("--out", sc.out, "profile CSV ('-' for stdout)")->capture_default_str();
    s_scale->add_option("--json", sc.json_out, "profile JSON");

    VerifyCfg vf;
    auto* s_verify = app.add_subcommand("verify", "bound certificates for a profile or field");
    s_verify->add_option("--in", vf.in, "profile (t,v,dv) or field (x,z,u) CSV, or JSON")->required();
    s_verify->add_option("--gamma", vf.gamma, "exponent for CSV input")->capture_default_str();
    s_verify->add_option("--strip-height", vf.strip_height, "strip 0 < x_N <= height")->capture_default_str();
    s_verify->add_option("--far-threshold", vf.far_threshold, "far region x_N >= threshold (default: strip height)");
    s_verify->add_option("--fit-lo", vf.fit_lo, "gradient exponent fit window, lower end");
    s_verify->add_option("--fit-hi", vf.fit_hi, "gradient exponent fit window, upper end");
    s_verify->add_option("--drift-tol", vf.drift_tol, "allowed refinement drift")->capture_default_str();
    s_verify->add_option("--out", vf.out, "certificates JSON ('-' for stdout)")->capture_default_str();

    HalfplaneCfg hp;
    auto* s_half = app.add_subcommand("halfplane", "solve on [-W/2, W/2] x [0, H] with 1-D boundary data");
    s_half->set_help_flag("--help", "print this help message and exit");  // -h is not free
    s_half->add_option("--gamma", hp.gamma, "singularity exponent (> 1)")->capture_default_str();
    s_half->add_option("--slope", hp.slope, "slope of the 1-D data profile (0: power solution)")->capture_default_str();
    s_half->add_option("--width", hp.width, "rectangle width")->capture_default_str();
    s_half->add_option("--height", hp.height, "rectangle height")->capture_default_str();
    s_half->add_option("--h", hp.h, "grid spacing")->capture_default_str();
    s_half->add_option("--perturb", hp.perturb, "amplitude a of (1 + a sin(pi x/W))")->capture_default_str();
    s_half->add_option("--perturb-target", hp.perturb_target, "lateral, top or both")->capture_default_str();
    s_half->add_option("--method", hp.method, "newton or nodewise")->capture_default_str();
    s_half->add_option("--tol", hp.tol, "stop when sup change <= tol max(1, sup u)")->capture_default_str();
    s_half->add_option("--out", hp.out, "field CSV ('-' for stdout)")->capture_default_str();
    s_half->add_option("--field-json", hp.field_json, "field JSON");
    s_half->add_option("--report", hp.report, "report JSON (default: stderr)");
    s_half->add_option("--symmetry", hp.symmetry, "per-row symmetry deviation CSV");
    s_half->add_option("--svg", hp.svg, "plot of the symmetry deviation");

    ReportCfg rp;
    auto* s_report = app.add_subcommand("report", "profiles, certificates and plots for one gamma");
    s_report->set_help_flag("--help", "print this help message and exit");  // -h is not free
    s_report->add_option("--gamma", rp.gamma, "singularity exponent (> 1)")->capture_default_str();
    s_report->add_option("--slopes", rp.slopes, "slopes of the linear-growth profiles")->capture_default_str();
    s_report->add_option("--out-dir", rp.out_dir, "output directory (must exist)");
    s_report->add_option("--strip-height", rp.strip_height, "strip for the certificates")->capture_default_str();
    s_report->add_option("--far-threshold", rp.far_threshold, "far region for the certificates")->capture_default_str();
    s_report->add_flag("--halfplane", rp.halfplane, "also run the symmetry-decay experiment");
    s_report->add_option("--h", rp.h, "grid spacing of the symmetry experiment")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config.empty()) apply_config(config, app, sub);
        if (sub == s_exact) return cmd_exact(ex);
        if (sub == s_shoot) return cmd_shoot(sh);
        if (sub == s_scale) return cmd_scale(sc);
        if (sub == s_verify) return cmd_verify(vf);
        if (sub == s_half) return cmd_halfplane(hp);
        if (sub == s_report) return cmd_report(rp);
        return 2;
    } catch (const hs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hs::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }
}
