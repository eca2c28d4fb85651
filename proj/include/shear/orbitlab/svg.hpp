#pragma once

// Self-contained SVG plots. Coordinates are plotted as given; callers pass
// log10 or signed-log values and say so in the axis label.

#include <string>
#include <utility>
#include <vector>

namespace shear {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
    bool line = false;     // polyline through the points, in order
    bool markers = true;
};

struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;

    std::string render(int width = 640, int height = 420) const;
};

// sign(x) log10(1 + |x|): keeps zero and sign, compresses huge values.
double signed_log10(double x);

} // namespace shear
