#include "shear/orbitlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace shear {

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

double signed_log10(double x) { return std::copysign(std::log10(1.0 + std::fabs(x)), x); }

std::string SvgPlot::render(int width, int height) const
{
    const double left = 70, right = 150, top = 40, bottom = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto &s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y))
                continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!(x0 <= x1)) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (x1 - x0 < 1e-12) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (y1 - y0 < 1e-12) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"15\">" << escape(title) << "</text>\n";
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\""
       << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 16)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick(xv) << "</text>\n";
        os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick(yv) << "</text>\n";
    }
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 10.0)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(x_label) << "</text>\n";
    os << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"12\" transform=\"rotate(-90 16 " << num(top + ph / 2) << ")\">" << escape(y_label)
       << "</text>\n";

    int legend = 0;
    for (const auto &s : series) {
        std::vector<std::pair<double, double>> pts;
        for (auto [x, y] : s.points)
            if (std::isfinite(x) && std::isfinite(y))
                pts.emplace_back(sx(x), sy(y));
        if (s.line && pts.size() > 1) {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i)
                os << (i ? " " : "") << num(pts[i].first) << "," << num(pts[i].second);
            os << "\"/>\n";
        }
        if (s.markers)
            for (auto [x, y] : pts)
                os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << s.color
                   << "\"/>\n";
        double ly = top + 10 + 18 * legend++;
        os << "<rect x=\"" << num(left + pw + 12) << "\" y=\"" << num(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
           << s.color << "\"/>\n";
        os << "<text x=\"" << num(left + pw + 28) << "\" y=\"" << num(ly + 1)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace shear
