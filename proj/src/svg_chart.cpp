#include "recovercast/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace recovercast {

namespace {

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

std::string fmt(double v, const char* pattern = "%.1f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string tick_label(double v) {
    const double a = std::abs(v);
    if (a >= 1e6) return fmt(v / 1e6, "%.2fM");
    if (a >= 1e3) return fmt(v / 1e3, "%.1fk");
    return fmt(v, "%.3g");
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec, const std::vector<LineSeries>& series) {
    constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
    const double plot_w = spec.width - kLeft - kRight;
    const double plot_h = spec.height - kTop - kBottom;

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) {
        y_lo -= 1;
        y_hi += 1;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << spec.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(spec.title) << "</text>\n";

    // axes and horizontal grid
    svg << "<g stroke=\"#888\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << kTop + plot_h << "\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + plot_h << "\"/>\n";
    svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double v = y_lo + (y_hi - y_lo) * i / kTicks;
        const double y = py(v);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft + plot_w
            << "\" y2=\"" << fmt(y) << "\" stroke=\"#eee\"/>\n";
        svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft << "\" y=\"" << kTop + plot_h + 18 << "\">"
        << escape(spec.x_start_label) << "</text>\n";
    svg << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"end\">" << escape(spec.x_end_label) << "</text>\n";
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << spec.height - 16
        << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    svg << "<text transform=\"translate(18," << kTop + plot_h / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";
    svg << "</g>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        svg << "<polyline class=\"series\" data-label=\"" << escape(s.label)
            << "\" fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"5,3\"";
        svg << " points=\"";
        bool first = true;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!first) svg << ' ';
            svg << fmt(px(s.x[i]), "%.2f") << ',' << fmt(py(s.y[i]), "%.2f");
            first = false;
        }
        svg << "\"/>\n";
        const double ly = kTop + 14 + 18.0 * static_cast<double>(k);
        const double lx = kLeft + plot_w + 14;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\""
            << ly << "\" stroke=\"" << escape(s.color) << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << lx + 26 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.label)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace recovercast
