#pragma once

// CSV and JSON for profiles, fields, certificates and reports. Floating output carries 15
// significant digits and never depends on the C locale.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "gamma.hpp"
#include "halfplane.hpp"
#include "profile.hpp"
#include "singular_ode.hpp"

namespace halfspace::io {

using json = nlohmann::json;

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return std::string(buf, r.ptr);
}

/// v rounded to 15 significant digits (so JSON output matches the CSV precision).
inline double round15(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    const std::string s = format_double(v);
    double out = v;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

/// Finite numbers as rounded JSON numbers, non-finite ones as null.
inline json num(double v) { return std::isfinite(v) ? json(round15(v)) : json(nullptr); }

inline double parse_double(std::string_view s, std::size_t line, std::string_view what) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s == "inf" || s == "+inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-Infinity") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* b = s.data();
    if (!s.empty() && *b == '+') ++b;
    const auto r = std::from_chars(b, s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ConfigError("line " + std::to_string(line) + ": cannot parse " + std::string(what) + " value '" +
                          std::string(s) + "'");
    return v;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto k = line.find(sep, pos);
        out.push_back(line.substr(pos, k == std::string_view::npos ? std::string_view::npos : k - pos));
        if (k == std::string_view::npos) break;
        pos = k + 1;
    }
    return out;
}

inline std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

/// Reads a CSV with the given header; returns rows of doubles. Errors name the line number.
inline std::vector<std::vector<double>> read_csv(std::istream& in, const std::vector<std::string>& header) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::vector<double>> rows;
    bool have_header = false;
    std::string joined;
    for (std::size_t k = 0; k < header.size(); ++k) joined += (k ? "," : "") + header[k];
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        if (!have_header) {
            if (line != joined)
                throw ConfigError("line " + std::to_string(lineno) + ": expected header '" + joined + "', got '" +
                                  line + "'");
            have_header = true;
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw ConfigError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                              " fields, got " + std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k) row.push_back(parse_double(cells[k], lineno, header[k]));
        rows.push_back(std::move(row));
    }
    if (!have_header) throw ConfigError("line 1: empty input, expected header '" + joined + "'");
    if (rows.empty()) throw ConfigError("line " + std::to_string(lineno + 1) + ": no data rows");
    return rows;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Profile1D

inline void write_profile_csv(std::ostream& os, const Profile1D& p) {
    os << "t,v,dv\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        os << format_double(p.grid[i]) << ',' << format_double(p.values[i]) << ',' << format_double(p.derivs[i])
           << '\n';
}

inline Profile1D read_profile_csv(std::istream& in, const GammaParam& g, ProfileKind kind = ProfileKind::raw) {
    const auto rows = detail::read_csv(in, {"t", "v", "dv"});
    Profile1D p;
    p.gamma = g;
    p.kind = kind;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!std::isfinite(rows[k][0]) || !std::isfinite(rows[k][1]))
            throw ConfigError("line " + std::to_string(k + 2) + ": t and v must be finite");
        if (!p.grid.empty() && !(rows[k][0] > p.grid.back()))
            throw ConfigError("line " + std::to_string(k + 2) + ": t must be strictly increasing");
        p.grid.push_back(rows[k][0]);
        p.values.push_back(rows[k][1]);
        p.derivs.push_back(rows[k][2]);
    }
    try {
        validate(p);
    } catch (const InvariantViolation& e) {
        throw ConfigError(std::string("profile input: ") + e.what());
    }
    return p;
}

inline json profile_json(const Profile1D& p) {
    json j;
    j["gamma"] = p.gamma.gamma;
    j["kind"] = std::string(to_string(p.kind));
    j["limit_slope"] = p.limit_slope ? num(*p.limit_slope) : json(nullptr);
    j["n"] = p.size();
    j["t_min"] = p.empty() ? json(nullptr) : num(p.t_min());
    j["t_max"] = p.empty() ? json(nullptr) : num(p.t_max());
    j["deriv_at_origin_infinite"] = p.starts_at_origin() && std::isinf(p.derivs.front());
    json t = json::array(), v = json::array(), d = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        t.push_back(num(p.grid[i]));
        v.push_back(num(p.values[i]));
        d.push_back(num(p.derivs[i]));
    }
    j["t"] = std::move(t);
    j["v"] = std::move(v);
    j["dv"] = std::move(d);
    return j;
}

inline Profile1D profile_from_json(const json& j) {
    try {
        Profile1D p;
        p.gamma = GammaParam::make(j.at("gamma").get<double>());
        p.kind = profile_kind_from(j.value("kind", std::string("raw")));
        if (j.contains("limit_slope") && !j["limit_slope"].is_null()) p.limit_slope = j["limit_slope"].get<double>();
        const auto& t = j.at("t");
        const auto& v = j.at("v");
        const auto& d = j.at("dv");
        if (t.size() != v.size() || t.size() != d.size()) throw ConfigError("profile JSON arrays differ in length");
        for (std::size_t i = 0; i < t.size(); ++i) {
            p.grid.push_back(t[i].get<double>());
            p.values.push_back(v[i].get<double>());
            p.derivs.push_back(d[i].is_null() ? std::numeric_limits<double>::infinity() : d[i].get<double>());
        }
        validate(p);
        return p;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("profile JSON: ") + e.what());
    } catch (const InvariantViolation& e) {
        throw ConfigError(std::string("profile JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------------------------
// Field2D

inline void write_field_csv(std::ostream& os, const Field2D& f) {
    os << "x,z,u\n";
    const Grid2D& g = f.grid;
    for (std::size_t j = 0; j <= g.nz; ++j)
        for (std::size_t i = 0; i <= g.nx; ++i)
            os << format_double(g.x(i)) << ',' << format_double(g.z(j)) << ',' << format_double(f.at(i, j)) << '\n';
}

inline json field_json(const Field2D& f) {
    json j;
    j["gamma"] = f.gamma.gamma;
    j["width"] = num(f.grid.width);
    j["height"] = num(f.grid.height);
    j["h"] = num(f.grid.h);
    j["nx"] = f.grid.nx;
    j["nz"] = f.grid.nz;
    j["boundary_mode"] = std::string(to_string(f.boundary_mode));
    j["layout"] = "row-major, values[j*(nx+1)+i], node (i,j) at (-width/2 + i h, j h)";
    json v = json::array();
    for (double x : f.values) v.push_back(num(x));
    j["values"] = std::move(v);
    return j;
}

inline Field2D field_from_json(const json& j) {
    try {
        Field2D f;
        f.gamma = GammaParam::make(j.at("gamma").get<double>());
        f.grid = build_grid(j.at("width").get<double>(), j.at("height").get<double>(), j.at("h").get<double>());
        f.boundary_mode = boundary_mode_from(j.value("boundary_mode", std::string("custom")));
        const auto& v = j.at("values");
        if (v.size() != f.grid.nodes())
            throw ConfigError("field JSON has " + std::to_string(v.size()) + " values, grid needs " +
                              std::to_string(f.grid.nodes()));
        for (const auto& x : v) f.values.push_back(x.get<double>());
        validate(f);
        return f;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field JSON: ") + e.what());
    } catch (const InvariantViolation& e) {
        throw ConfigError(std::string("field JSON: ") + e.what());
    }
}

/// Rebuilds the grid from the distinct x and z columns; rows may come in any order.
inline Field2D read_field_csv(std::istream& in, const GammaParam& g) {
    const auto rows = detail::read_csv(in, {"x", "z", "u"});
    std::vector<double> xs, zs;
    for (const auto& r : rows) {
        xs.push_back(r[0]);
        zs.push_back(r[1]);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    if (xs.size() < 2 || zs.size() < 2) throw ConfigError("field CSV needs at least two distinct x and z values");
    const double h = zs[1] - zs[0];
    Field2D f;
    f.gamma = g;
    f.grid = build_grid(xs.back() - xs.front(), zs.back() - zs.front(), h);
    if (std::abs(xs.front() + 0.5 * f.grid.width) > 1e-9 * f.grid.width || zs.front() != 0.0)
        throw ConfigError("field CSV must span x in [-width/2, width/2] and z from 0");
    if (rows.size() != f.grid.nodes())
        throw ConfigError("field CSV has " + std::to_string(rows.size()) + " rows, grid needs " +
                          std::to_string(f.grid.nodes()));
    f.values.assign(f.grid.nodes(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto i = static_cast<std::size_t>(std::llround((rows[k][0] - xs.front()) / h));
        const auto j = static_cast<std::size_t>(std::llround(rows[k][1] / h));
        if (i > f.grid.nx || j > f.grid.nz || std::abs(rows[k][0] - f.grid.x(i)) > 1e-9 * std::max(1.0, h) ||
            std::abs(rows[k][1] - f.grid.z(j)) > 1e-9 * std::max(1.0, h))
            throw ConfigError("line " + std::to_string(k + 2) + ": node off the uniform grid");
        f.values[f.grid.index(i, j)] = rows[k][2];
    }
    for (double v : f.values)
        if (std::isnan(v)) throw ConfigError("field CSV is missing nodes");
    try {
        validate(f);
    } catch (const InvariantViolation& e) {
        throw ConfigError(std::string("field CSV: ") + e.what());
    }
    return f;
}

// ---------------------------------------------------------------------------------------------
// Reports

inline json certificate_json(const BoundCertificate& c) {
    json j;
    j["kind"] = std::string(to_string(c.kind));
    j["region"] = c.region;
    j["empirical_constant"] = num(c.empirical_constant);
    j["margin"] = num(c.margin);
    j["pass"] = c.pass;
    j["samples"] = c.samples;
    j["refinement_drift"] = num(c.refinement_drift);
    j["attained_at"] = num(c.attained_at);
    if (c.fitted_exponent) j["fitted_exponent"] = num(*c.fitted_exponent);
    if (c.far_ratio) j["far_ratio"] = num(*c.far_ratio);
    if (c.affine_c1) j["affine_c1"] = num(*c.affine_c1);
    if (c.affine_c2) j["affine_c2"] = num(*c.affine_c2);
    return j;
}

inline json certificates_json(const std::vector<BoundCertificate>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back(certificate_json(c));
    return a;
}

inline json shoot_report_json(const ShootReport& r) {
    return json{{"route_a_slope", num(r.route_a_slope)},       {"route_b_slope", num(r.route_b_slope)},
                {"discrepancy_sup_rel", num(r.discrepancy_sup_rel)}, {"tau0", num(r.tau0)},
                {"b_fit", num(r.b_fit)},                       {"energy_drift", num(r.energy_drift)}};
}

inline json iteration_report_json(const IterationReport& r) {
    json h = json::array();
    for (double v : r.residual_history) h.push_back(num(v));
    return json{{"residual_history", std::move(h)},
                {"monotone", r.monotone},
                {"residual_monotone", r.residual_monotone},
                {"ordered_between_barriers", r.ordered_between_barriers},
                {"iterations", r.iterations},
                {"final_change", num(r.final_change)},
                {"projections", r.projections},
                {"projections_after_first", r.projections_after_first},
                {"method", r.method},
                {"beta", num(r.beta)},
                {"sub_coefficient", num(r.sub_coefficient)},
                {"converged", r.converged}};
}

inline json symmetry_json(const SymmetryDeviation& s) {
    json z = json::array(), d = json::array();
    for (std::size_t k = 0; k < s.z.size(); ++k) {
        z.push_back(num(s.z[k]));
        d.push_back(num(s.per_row[k]));
    }
    return json{{"z", std::move(z)}, {"per_row", std::move(d)}, {"max_dev", num(s.max_dev)}};
}

inline void write_symmetry_csv(std::ostream& os, const SymmetryDeviation& s) {
    os << "z,deviation\n";
    for (std::size_t k = 0; k < s.z.size(); ++k) os << format_double(s.z[k]) << ',' << format_double(s.per_row[k]) << '\n';
}

// ---------------------------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw ConfigError("failed writing '" + path + "'");
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace halfspace::io
