#include "scaletrim/svg_chart.hpp"
#include "scaletrim/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace scaletrim {

namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

} // namespace

std::string curve_chart_svg(const CumulativeAucCurve& curve, const CurveChartOptions& options) {
    if (curve.steps.empty()) throw ValidationError("cannot plot an empty curve");

    const double margin_left = 64, margin_right = 24, margin_top = 36, margin_bottom = 48;
    const double plot_w = options.width - margin_left - margin_right;
    const double plot_h = options.height - margin_top - margin_bottom;

    double lo = curve.steps[0].auc, hi = curve.steps[0].auc;
    for (const auto& s : curve.steps) {
        lo = std::min(lo, s.auc);
        hi = std::max(hi, s.auc);
    }
    const double y_min = lo - 0.01;
    const double y_max = hi + 0.01;

    const std::size_t total = curve.steps.size();
    auto x_of = [&](std::size_t k) {
        return margin_left + (static_cast<double>(k) / total) * plot_w;
    };
    auto y_of = [&](double auc) {
        return margin_top + (y_max - auc) / (y_max - y_min) * plot_h;
    };

    std::vector<double> step_aucs;
    for (const auto& s : curve.steps) step_aucs.push_back(s.auc);
    const std::size_t peak = shortest_prefix_argmax(step_aucs);
    const auto& peak_step = curve.steps[peak - 1];

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
        << options.height << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << options.width / 2 << "\" y=\"20\" text-anchor=\"middle\""
        << " font-family=\"sans-serif\" font-size=\"14\">" << options.title << "</text>\n";

    // Axes
    svg << "  <line x1=\"" << fmt("%.1f", margin_left) << "\" y1=\"" << fmt("%.1f", margin_top)
        << "\" x2=\"" << fmt("%.1f", margin_left) << "\" y2=\""
        << fmt("%.1f", margin_top + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << fmt("%.1f", margin_left) << "\" y1=\""
        << fmt("%.1f", margin_top + plot_h) << "\" x2=\"" << fmt("%.1f", margin_left + plot_w)
        << "\" y2=\"" << fmt("%.1f", margin_top + plot_h) << "\" stroke=\"black\"/>\n";

    // Y ticks
    for (int t = 0; t <= 4; ++t) {
        const double value = y_min + (y_max - y_min) * t / 4.0;
        const double y = y_of(value);
        svg << "  <line x1=\"" << fmt("%.1f", margin_left - 4) << "\" y1=\"" << fmt("%.1f", y)
            << "\" x2=\"" << fmt("%.1f", margin_left) << "\" y2=\"" << fmt("%.1f", y)
            << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << fmt("%.1f", margin_left - 8) << "\" y=\"" << fmt("%.1f", y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt("%.3f", value) << "</text>\n";
    }

    // X ticks: one per step, thinned when crowded
    const std::size_t stride = total > 25 ? (total + 24) / 25 : 1;
    for (std::size_t k = 1; k <= total; ++k) {
        if (k % stride != 0 && k != total) continue;
        const double x = x_of(k);
        svg << "  <line x1=\"" << fmt("%.1f", x) << "\" y1=\"" << fmt("%.1f", margin_top + plot_h)
            << "\" x2=\"" << fmt("%.1f", x) << "\" y2=\"" << fmt("%.1f", margin_top + plot_h + 4)
            << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << fmt("%.1f", x) << "\" y=\"" << fmt("%.1f", margin_top + plot_h + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << k
            << "</text>\n";
    }
    svg << "  <text x=\"" << fmt("%.1f", margin_left + plot_w / 2) << "\" y=\""
        << fmt("%.1f", margin_top + plot_h + 36)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "items in running total</text>\n";

    // Curve
    svg << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 1; k <= total; ++k) {
        if (k > 1) svg << ' ';
        svg << fmt("%.1f", x_of(k)) << ',' << fmt("%.1f", y_of(curve.steps[k - 1].auc));
    }
    svg << "\"/>\n";
    for (std::size_t k = 1; k <= total; ++k) {
        svg << "  <circle cx=\"" << fmt("%.1f", x_of(k)) << "\" cy=\""
            << fmt("%.1f", y_of(curve.steps[k - 1].auc)) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    }

    // Peak marker
    svg << "  <circle cx=\"" << fmt("%.1f", x_of(peak)) << "\" cy=\""
        << fmt("%.1f", y_of(peak_step.auc)) << "\" r=\"5\" fill=\"none\" stroke=\"#d62728\""
        << " stroke-width=\"1.5\"/>\n";
    svg << "  <text x=\"" << fmt("%.1f", x_of(peak)) << "\" y=\""
        << fmt("%.1f", y_of(peak_step.auc) - 10)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\""
        << " fill=\"#d62728\">peak: " << peak << " items, AUC " << fmt("%.3f", peak_step.auc)
        << "</text>\n";

    svg << "</svg>\n";
    return svg.str();
}

void write_curve_chart(const CumulativeAucCurve& curve, const std::string& path,
                       const CurveChartOptions& options) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << curve_chart_svg(curve, options);
}

} // namespace scaletrim
