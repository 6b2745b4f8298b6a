#ifndef RECOVERCAST_SVG_CHART_HPP
#define RECOVERCAST_SVG_CHART_HPP

#include <string>
#include <vector>

namespace recovercast {

struct LineSeries {
    std::string label;
    std::string color;
    std::vector<double> x;  // day offsets on a shared axis
    std::vector<double> y;
    bool dashed = false;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string x_start_label;  // tick text at the left edge of the x range
    std::string x_end_label;    // tick text at the right edge
    int width = 900;
    int height = 480;
};

/// Self-contained SVG line chart. Empty series are listed in the legend
/// and emit an empty <polyline>.
std::string render_line_chart(const ChartSpec& spec, const std::vector<LineSeries>& series);

}  // namespace recovercast

#endif  // RECOVERCAST_SVG_CHART_HPP
