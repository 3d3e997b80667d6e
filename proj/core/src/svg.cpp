#include "emoforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "emoforge/util.hpp"

namespace emoforge {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(title) << "</text>\n";

    for (int i = 0; i <= 5; ++i) {
        const double y = ymin + (ymax - ymin) * i / 5.0;
        svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py(y) << "\" x2=\""
            << kWidth - kMarginRight << "\" y2=\"" << py(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(y, 3) << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double x = xmin + (xmax - xmin) * i / 5.0;
        svg << "<text x=\"" << px(x) << "\" y=\"" << kHeight - kMarginBottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(x, 0) << "</text>\n";
    }
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
        << kMarginTop + plot_h / 2 << ")\">" << escape(y_label) << "</text>\n";

    int color = 0;
    for (const auto& s : series) {
        const char* stroke = kPalette[color % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : s.points) svg << px(x) << "," << py(y) << " ";
        svg << "\"/>\n";
        for (const auto& [x, y] : s.points) {
            svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << stroke
                << "\"/>\n";
        }
        svg << "<rect x=\"" << kWidth - kMarginRight + 12 << "\" y=\"" << kMarginTop + color * 22
            << "\" width=\"14\" height=\"14\" fill=\"" << stroke << "\"/>\n";
        svg << "<text x=\"" << kWidth - kMarginRight + 32 << "\" y=\""
            << kMarginTop + color * 22 + 12 << "\" font-size=\"12\">" << escape(s.name)
            << "</text>\n";
        ++color;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<SvgBarGroup>& groups) {
    double vmax = 0.0;
    for (const auto& g : groups) {
        for (double v : g.values) vmax = std::max(vmax, v);
    }
    if (vmax <= 0.0) vmax = 1.0;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const std::size_t n = labels.size();
    const double slot = n > 0 ? plot_w / n : plot_w;
    const double bar = groups.empty() ? slot : slot * 0.8 / groups.size();

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(title) << "</text>\n";

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            if (i >= groups[gi].values.size()) continue;
            const double v = groups[gi].values[i];
            const double h = v / vmax * plot_h;
            const double x = kMarginLeft + i * slot + slot * 0.1 + gi * bar;
            svg << "<rect x=\"" << x << "\" y=\"" << kMarginTop + plot_h - h << "\" width=\""
                << bar * 0.92 << "\" height=\"" << h << "\" fill=\"" << kPalette[gi % 6]
                << "\"/>\n";
        }
        svg << "<text x=\"" << kMarginLeft + i * slot + slot / 2 << "\" y=\""
            << kHeight - kMarginBottom + 16 << "\" text-anchor=\"end\" font-size=\"10\" "
            << "transform=\"rotate(-45 " << kMarginLeft + i * slot + slot / 2 << " "
            << kHeight - kMarginBottom + 16 << ")\">" << escape(labels[i]) << "</text>\n";
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        svg << "<rect x=\"" << kWidth - kMarginRight + 12 << "\" y=\"" << kMarginTop + gi * 22
            << "\" width=\"14\" height=\"14\" fill=\"" << kPalette[gi % 6] << "\"/>\n";
        svg << "<text x=\"" << kWidth - kMarginRight + 32 << "\" y=\"" << kMarginTop + gi * 22 + 12
            << "\" font-size=\"12\">" << escape(groups[gi].name) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace emoforge
