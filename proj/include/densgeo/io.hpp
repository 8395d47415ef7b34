#pragma once

#include <string>
#include <utility>
#include <vector>

#include "densgeo/errors.hpp"

namespace densgeo {

struct IoError : Error {
    using Error::Error;
};

/// 17-significant-digit decimal formatting ('.' decimal point), so CSV
/// output round-trips doubles exactly and runs are byte-comparable.
std::string format_g17(double x);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& content);

struct Polyline {
    std::vector<std::pair<double, double>> points;
};

/// Static polyline figure with axes; purely presentational.
void write_svg(const std::string& path, const std::vector<Polyline>& lines,
               int width = 640, int height = 640);

}  // namespace densgeo
