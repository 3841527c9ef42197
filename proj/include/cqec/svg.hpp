#pragma once

#include <string>
#include <vector>

namespace cqec {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;             // empty: palette by index
    std::vector<double> band_lo;   // optional shaded band around the curve
    std::vector<double> band_hi;
};

struct PlotOptions {
    int width = 860;
    int height = 520;
    std::string title;
    std::string x_label = "t";
    std::string y_label;
};

// Standalone SVG with one polyline per series, axis ticks and a legend.
// Pure function of its inputs: identical inputs give identical bytes.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opt);

void write_svg(const std::string& path, const std::vector<PlotSeries>& series,
               const PlotOptions& opt);

}  // namespace cqec
