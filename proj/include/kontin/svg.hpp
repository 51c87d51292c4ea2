#ifndef KONTIN_SVG_HPP
#define KONTIN_SVG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <kontin/core.hpp>

namespace kontin
{

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotStyle {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    bool step = false;    // draw a staircase instead of straight segments
    bool markers = true;
    int width = 640;
    int height = 400;
};

namespace detail
{

inline std::string svg_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::string xml_escape(const std::string &s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    [[nodiscard]] double map(double v) const { return log ? std::log10(v) : v; }
    [[nodiscard]] double unmap(double v) const { return log ? std::pow(10.0, v) : v; }
};

inline Axis make_axis(std::span<const PlotSeries> series, bool use_x, bool log)
{
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto &s : series) {
        for (double v : use_x ? s.x : s.y) {
            require(std::isfinite(v), "emit_plot: non-finite value");
            require(!log || v > 0.0, "emit_plot: log axis needs positive values");
            lo = std::min(lo, a.map(v));
            hi = std::max(hi, a.map(v));
        }
    }
    if (hi - lo < 1e-300) {
        const double pad = std::max(std::abs(lo) * 0.1, 0.5);
        lo -= pad;
        hi += pad;
    } else {
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

} // namespace detail

// Standalone SVG line chart; the output depends only on the arguments.
inline std::string emit_plot(std::span<const PlotSeries> series, const PlotStyle &style = {})
{
    require(!series.empty(), "emit_plot: no series");
    for (const auto &s : series) {
        require(!s.x.empty(), "emit_plot: empty series '" + s.label + "'");
        require(s.x.size() == s.y.size(), "emit_plot: x and y lengths differ in '" + s.label + "'");
    }
    require(style.width >= 200 && style.height >= 150, "emit_plot: canvas too small");
    using detail::svg_number;

    const auto ax = detail::make_axis(series, true, style.log_x);
    const auto ay = detail::make_axis(series, false, style.log_y);
    const double left = 70.0;
    const double right = style.width - 20.0;
    const double top = 30.0;
    const double bottom = style.height - 50.0;
    auto px = [&](double v) { return left + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * (right - left); };
    auto py = [&](double v) { return bottom - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * (bottom - top); };

    static constexpr std::array<const char *, 6> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
           std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        out += "<text x=\"" + svg_number(style.width / 2.0) + "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" +
               detail::xml_escape(style.title) + "</text>\n";
    }
    out += "<g stroke=\"black\" fill=\"none\">\n";
    out += "<line x1=\"" + svg_number(left) + "\" y1=\"" + svg_number(bottom) + "\" x2=\"" + svg_number(right) +
           "\" y2=\"" + svg_number(bottom) + "\"/>\n";
    out += "<line x1=\"" + svg_number(left) + "\" y1=\"" + svg_number(top) + "\" x2=\"" + svg_number(left) +
           "\" y2=\"" + svg_number(bottom) + "\"/>\n";
    out += "</g>\n";

    // five evenly spaced ticks per axis, in mapped coordinates
    for (int i = 0; i <= 4; ++i) {
        const double vx = ax.unmap(ax.lo + (ax.hi - ax.lo) * i / 4.0);
        const double x = px(vx);
        out += "<line x1=\"" + svg_number(x) + "\" y1=\"" + svg_number(bottom) + "\" x2=\"" + svg_number(x) +
               "\" y2=\"" + svg_number(bottom + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + svg_number(x) + "\" y=\"" + svg_number(bottom + 18) + "\" text-anchor=\"middle\">" +
               detail::tick_label(vx) + "</text>\n";
        const double vy = ay.unmap(ay.lo + (ay.hi - ay.lo) * i / 4.0);
        const double y = py(vy);
        out += "<line x1=\"" + svg_number(left - 5) + "\" y1=\"" + svg_number(y) + "\" x2=\"" + svg_number(left) +
               "\" y2=\"" + svg_number(y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + svg_number(left - 8) + "\" y=\"" + svg_number(y + 4) + "\" text-anchor=\"end\">" +
               detail::tick_label(vy) + "</text>\n";
    }
    if (!style.x_label.empty()) {
        out += "<text x=\"" + svg_number((left + right) / 2) + "\" y=\"" + svg_number(style.height - 10.0) +
               "\" text-anchor=\"middle\">" + detail::xml_escape(style.x_label) + "</text>\n";
    }
    if (!style.y_label.empty()) {
        out += "<text x=\"14\" y=\"" + svg_number((top + bottom) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
               svg_number((top + bottom) / 2) + ")\">" + detail::xml_escape(style.y_label) + "</text>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto &ser = series[s];
        const std::string color = colors[s % colors.size()];
        if (ser.x.size() > 1) {
            std::string pts;
            for (std::size_t i = 0; i < ser.x.size(); ++i) {
                if (style.step && i > 0) {
                    pts += svg_number(px(ser.x[i])) + "," + svg_number(py(ser.y[i - 1])) + " ";
                }
                pts += svg_number(px(ser.x[i])) + "," + svg_number(py(ser.y[i])) + " ";
            }
            pts.pop_back();
            out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        }
        if (style.markers || ser.x.size() == 1) {
            for (std::size_t i = 0; i < ser.x.size(); ++i) {
                out += "<circle cx=\"" + svg_number(px(ser.x[i])) + "\" cy=\"" + svg_number(py(ser.y[i])) +
                       "\" r=\"3\" fill=\"" + color + "\"/>\n";
            }
        }
        const double ly = top + 14.0 * static_cast<double>(s);
        out += "<text x=\"" + svg_number(right - 4) + "\" y=\"" + svg_number(ly + 4) + "\" text-anchor=\"end\" fill=\"" +
               color + "\">" + detail::xml_escape(ser.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

inline std::string emit_plot(const PlotSeries &series, const PlotStyle &style = {})
{
    return emit_plot(std::span<const PlotSeries>(&series, 1), style);
}

} // namespace kontin

#endif
