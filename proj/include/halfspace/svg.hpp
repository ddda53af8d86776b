#pragma once

// Minimal self-contained SVG line charts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"

namespace halfspace::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    int width = 720;
    int height = 480;
};

namespace detail {

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string fixed(double v) {
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss.setf(std::ios::fixed);
    ss.precision(2);
    ss << v;
    return ss.str();
}

}  // namespace detail

/// Renders the series as polylines; points that are non-finite, or nonpositive on a log axis, are skipped.
inline std::string render(const PlotSpec& spec, const std::vector<Series>& series) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};
    auto tx = [&](double v) { return spec.logx ? std::log10(v) : v; };
    auto ty = [&](double v) { return spec.logy ? std::log10(v) : v; };
    auto ok = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.logx || x > 0.0) && (!spec.logy || y > 0.0);
    };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            if (!ok(s.x[k], s.y[k])) continue;
            x0 = std::min(x0, tx(s.x[k]));
            x1 = std::max(x1, tx(s.x[k]));
            y0 = std::min(y0, ty(s.y[k]));
            y1 = std::max(y1, ty(s.y[k]));
        }
    if (!(x1 >= x0)) x0 = 0, x1 = 1;
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;

    const double ml = 80, mr = 160, mt = 40, mb = 60;
    const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
    auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return mt + ph - (ty(v) - y0) / (y1 - y0) * ph; };
    auto label = [](double v, bool lg) { return io::format_double(lg ? std::pow(10.0, v) : v).substr(0, 10); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << detail::fixed(ml) << "\" y=\"24\" font-size=\"14\">" << detail::escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << detail::fixed(ml) << "\" y=\"" << detail::fixed(mt) << "\" width=\"" << detail::fixed(pw)
       << "\" height=\"" << detail::fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = x0 + (x1 - x0) * k / 4.0, fy = y0 + (y1 - y0) * k / 4.0;
        const double sx = ml + pw * k / 4.0, sy = mt + ph - ph * k / 4.0;
        os << "<text x=\"" << detail::fixed(sx) << "\" y=\"" << detail::fixed(mt + ph + 18)
           << "\" text-anchor=\"middle\">" << label(fx, spec.logx) << "</text>\n";
        os << "<text x=\"" << detail::fixed(ml - 6) << "\" y=\"" << detail::fixed(sy + 4) << "\" text-anchor=\"end\">"
           << label(fy, spec.logy) << "</text>\n";
    }
    os << "<text x=\"" << detail::fixed(ml + pw / 2) << "\" y=\"" << detail::fixed(spec.height - 16.0)
       << "\" text-anchor=\"middle\">" << detail::escape(spec.xlabel) << (spec.logx ? " (log)" : "") << "</text>\n";
    os << "<text x=\"16\" y=\"" << detail::fixed(mt + ph / 2) << "\" transform=\"rotate(-90 16 "
       << detail::fixed(mt + ph / 2) << ")\" text-anchor=\"middle\">" << detail::escape(spec.ylabel)
       << (spec.logy ? " (log)" : "") << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = colors[s % (sizeof colors / sizeof *colors)];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < std::min(series[s].x.size(), series[s].y.size()); ++k)
            if (ok(series[s].x[k], series[s].y[k]))
                os << detail::fixed(px(series[s].x[k])) << ',' << detail::fixed(py(series[s].y[k])) << ' ';
        os << "\"/>\n";
        const double ly = mt + 16.0 * static_cast<double>(s + 1);
        os << "<line x1=\"" << detail::fixed(ml + pw + 10) << "\" y1=\"" << detail::fixed(ly - 4) << "\" x2=\""
           << detail::fixed(ml + pw + 30) << "\" y2=\"" << detail::fixed(ly - 4) << "\" stroke=\"" << col
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << detail::fixed(ml + pw + 34) << "\" y=\"" << detail::fixed(ly) << "\">"
           << detail::escape(series[s].label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace halfspace::svg
