#include "cqec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cqec {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v == 0.0 ? 0.0 : v);  // no negative zero
    return buf;
}

// Tick spacing of the form {1, 2, 5} * 10^k giving 4-8 ticks.
double nice_step(double span) {
    if (span <= 0.0) return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.5) nice = 1.0;
    else if (frac <= 3.5) nice = 2.0;
    else if (frac <= 7.5) nice = 5.0;
    return nice * mag;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
    if (series.empty()) throw std::invalid_argument("nothing to plot");
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw std::invalid_argument("series '" + s.label + "' has no consistent points");
        if (!s.band_lo.empty() &&
            (s.band_lo.size() != s.x.size() || s.band_hi.size() != s.x.size()))
            throw std::invalid_argument("series '" + s.label + "' band size mismatch");
    }

    double x_min = series[0].x[0], x_max = x_min;
    double y_min = series[0].y[0], y_max = y_min;
    for (const auto& s : series) {
        for (double v : s.x) { x_min = std::min(x_min, v); x_max = std::max(x_max, v); }
        for (double v : s.y) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
        for (double v : s.band_lo) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
        for (double v : s.band_hi) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) { y_min -= 0.5; y_max += 0.5; }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double ml = 64, mr = 16, mt = opt.title.empty() ? 16 : 40, mb = 46;
    const double pw = opt.width - ml - mr;
    const double ph = opt.height - mt - mb;
    auto sx = [&](double v) { return ml + (v - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double v) { return mt + (y_max - v) / (y_max - y_min) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    svg << "<rect width=\"" << opt.width << "\" height=\"" << opt.height
        << "\" fill=\"#ffffff\"/>\n";

    // grid + ticks
    const double xs = nice_step(x_max - x_min);
    const double ys = nice_step(y_max - y_min);
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (double v = std::ceil(x_min / xs) * xs; v <= x_max + 1e-9 * xs; v += xs) {
        const double X = sx(v);
        svg << "<line x1=\"" << px(X) << "\" y1=\"" << px(mt) << "\" x2=\"" << px(X)
            << "\" y2=\"" << px(mt + ph) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << px(X) << "\" y=\"" << px(mt + ph + 18)
            << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
    }
    for (double v = std::ceil(y_min / ys) * ys; v <= y_max + 1e-9 * ys; v += ys) {
        const double Y = sy(v);
        svg << "<line x1=\"" << px(ml) << "\" y1=\"" << px(Y) << "\" x2=\"" << px(ml + pw)
            << "\" y2=\"" << px(Y) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(Y + 4)
            << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
    }
    svg << "</g>\n";

    // bands under the curves
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        if (s.band_lo.empty()) continue;
        const std::string color = s.color.empty() ? kPalette[i % 8] : s.color;
        svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k)
            svg << px(sx(s.x[k])) << "," << px(sy(s.band_hi[k])) << " ";
        for (std::size_t k = s.x.size(); k-- > 0;)
            svg << px(sx(s.x[k])) << "," << px(sy(s.band_lo[k])) << " ";
        svg << "\"/>\n";
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const std::string color = s.color.empty() ? kPalette[i % 8] : s.color;
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k)
            svg << px(sx(s.x[k])) << "," << px(sy(s.y[k])) << " ";
        svg << "\"/>\n";
    }

    // frame
    svg << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\"" << px(pw)
        << "\" height=\"" << px(ph)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    svg << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#111111\">\n";
    if (!opt.title.empty())
        svg << "<text x=\"" << px(ml + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-size=\"16\">" << escape_xml(opt.title) << "</text>\n";
    svg << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(mt + ph + 38)
        << "\" text-anchor=\"middle\">" << escape_xml(opt.x_label) << "</text>\n";
    if (!opt.y_label.empty())
        svg << "<text x=\"16\" y=\"" << px(mt + ph / 2) << "\" text-anchor=\"middle\" "
            << "transform=\"rotate(-90 16 " << px(mt + ph / 2) << ")\">"
            << escape_xml(opt.y_label) << "</text>\n";

    // legend, top-right inside the frame
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const std::string color = s.color.empty() ? kPalette[i % 8] : s.color;
        const double Y = mt + 16 + 18 * static_cast<double>(i);
        svg << "<line x1=\"" << px(ml + pw - 150) << "\" y1=\"" << px(Y - 4) << "\" x2=\""
            << px(ml + pw - 122) << "\" y2=\"" << px(Y - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << px(ml + pw - 116) << "\" y=\"" << px(Y) << "\">"
            << escape_xml(s.label) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void write_svg(const std::string& path, const std::vector<PlotSeries>& series,
               const PlotOptions& opt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << render_svg(series, opt);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cqec
