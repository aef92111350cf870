#pragma once

#include "scaletrim/reduction.hpp"

#include <string>

namespace scaletrim {

struct CurveChartOptions {
    int width = 640;
    int height = 400;
    std::string title = "AUC of running item totals";
};

// Line chart of the cumulative AUC curve. X axis spans [0,1] as the fraction
// of items included (ticks labelled with item counts); Y axis spans
// [min-0.01, max+0.01]. The peak step is marked and annotated with its item
// count and AUC. Output is standalone SVG, byte-stable for identical input.
std::string curve_chart_svg(const CumulativeAucCurve& curve,
                            const CurveChartOptions& options = {});

void write_curve_chart(const CumulativeAucCurve& curve, const std::string& path,
                       const CurveChartOptions& options = {});

} // namespace scaletrim
