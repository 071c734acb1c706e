#pragma once

#include <string>
#include <vector>

namespace fracspec::harness {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal line chart: frame, zero line, axis tick labels, one polyline per
// series and a legend.  Output depends only on the inputs.
std::string line_chart(const std::string& title, const std::vector<Series>& series);

} // namespace fracspec::harness
