#pragma once

#include <string>
#include <vector>

namespace cover::svg {

struct Series
{
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;  ///< draw points instead of a line
};

//! A bare line chart: frame, ticks, axis labels, legend and one polyline per series.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

}  // namespace cover::svg
