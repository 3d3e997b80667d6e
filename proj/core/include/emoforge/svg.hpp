#pragma once

#include <string>
#include <vector>

namespace emoforge {

// Minimal dependency-free SVG writers for the report charts.

struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series);

struct SvgBarGroup {
    std::string name;  // e.g. a strategy
    std::vector<double> values;
};

std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<SvgBarGroup>& groups);

}  // namespace emoforge
