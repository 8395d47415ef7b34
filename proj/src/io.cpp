#include "densgeo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace densgeo {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw IoError("csv row width does not match header");
        }
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_g17(row[i]);
        }
        out << '\n';
    }
    if (!out.good()) throw IoError("write failed for " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out.good()) throw IoError("write failed for " + path);
}

void write_svg(const std::string& path, const std::vector<Polyline>& lines, int width,
               int height) {
    double x_lo = -1.0, x_hi = 1.0, y_lo = -1.0, y_hi = 1.0;
    bool first = true;
    for (const auto& line : lines) {
        for (const auto& [x, y] : line.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                first = false;
            } else {
                x_lo = std::fmin(x_lo, x);
                x_hi = std::fmax(x_hi, x);
                y_lo = std::fmin(y_lo, y);
                y_hi = std::fmax(y_hi, y);
            }
        }
    }
    const double pad_x = 0.05 * (x_hi - x_lo + 1e-12);
    const double pad_y = 0.05 * (y_hi - y_lo + 1e-12);
    x_lo -= pad_x;
    x_hi += pad_x;
    y_lo -= pad_y;
    y_hi += pad_y;

    const auto sx = [&](double x) { return (x - x_lo) / (x_hi - x_lo) * width; };
    const auto sy = [&](double y) { return height - (y - y_lo) / (y_hi - y_lo) * height; };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes through the origin when visible.
    if (x_lo < 0.0 && x_hi > 0.0) {
        svg << "<line x1=\"" << sx(0) << "\" y1=\"0\" x2=\"" << sx(0) << "\" y2=\""
            << height << "\" stroke=\"#cccccc\"/>\n";
    }
    if (y_lo < 0.0 && y_hi > 0.0) {
        svg << "<line x1=\"0\" y1=\"" << sy(0) << "\" x2=\"" << width << "\" y2=\""
            << sy(0) << "\" stroke=\"#cccccc\"/>\n";
    }
    int color = 0;
    for (const auto& line : lines) {
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[color % 8]
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : line.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            svg << sx(x) << ',' << sy(y) << ' ';
        }
        svg << "\"/>\n";
        ++color;
    }
    svg << "</svg>\n";
    write_text_file(path, svg.str());
}

}  // namespace densgeo
