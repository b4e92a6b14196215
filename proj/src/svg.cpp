#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dcpsp/harness.hpp"

namespace dcpsp {

namespace {

constexpr double kWidth = 640.0, kHeight = 400.0;
constexpr double kLeft = 70.0, kRight = 610.0, kTop = 30.0, kBottom = 350.0;

const char* solver_color(SolverKind k) {
    switch (k) {
        case SolverKind::Exact: return "#1f77b4";
        case SolverKind::Heu1: return "#d62728";
        case SolverKind::Heu2: return "#2ca02c";
    }
    return "#000000";
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct Series {
    SolverKind solver;
    std::vector<double> x, y, lo, hi;  // pixel coordinates; lo/hi = CI ends
};

}  // namespace

std::string emit_chart(const std::vector<GroupSummary>& groups, ChartKind kind) {
    if (groups.empty()) throw InvalidParamsError("emit_chart: no data");
    const bool log_scale = kind == ChartKind::RuntimeLog;
    const char* y_label = log_scale ? "wall time [ms]" : "cost ratio";

    auto value_of = [&](const GroupSummary& g) {
        return log_scale ? g.wall_ms : g.ratio;
    };

    // axis values, sorted and de-duplicated
    std::vector<int> axis;
    for (const auto& g : groups) axis.push_back(g.axis_value);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    auto x_pix = [&](int v) {
        auto it = std::find(axis.begin(), axis.end(), v);
        std::size_t i = static_cast<std::size_t>(it - axis.begin());
        if (axis.size() == 1) return (kLeft + kRight) / 2.0;
        return kLeft + (kRight - kLeft) * static_cast<double>(i) /
                           static_cast<double>(axis.size() - 1);
    };

    // data range including CI ends; runtime values are clamped to >= 0.001 ms
    // so the log ordinate stays finite
    const double floor_v = log_scale ? 1e-3 : 0.0;
    double vmin = 1e300, vmax = -1e300;
    for (const auto& g : groups) {
        Stats st = value_of(g);
        if (st.n == 0) continue;
        double half = std::isnan(st.ci_half) ? 0.0 : st.ci_half;
        vmin = std::min(vmin, std::max(floor_v, st.mean - half));
        vmax = std::max(vmax, std::max(floor_v, st.mean + half));
    }
    if (vmax < vmin) throw InvalidParamsError("emit_chart: no samples in any group");

    std::vector<double> ticks;
    double lo_axis, hi_axis;
    if (log_scale) {
        int dlo = static_cast<int>(std::floor(std::log10(vmin)));
        int dhi = static_cast<int>(std::ceil(std::log10(vmax)));
        if (dhi <= dlo) dhi = dlo + 1;
        lo_axis = dlo;
        hi_axis = dhi;
        for (int d = dlo; d <= dhi; ++d) ticks.push_back(std::pow(10.0, d));
    } else {
        double span = vmax - vmin;
        if (span <= 0) span = std::max(0.1, std::abs(vmax) * 0.1);
        lo_axis = vmin - 0.05 * span;
        hi_axis = vmax + 0.05 * span;
        for (int i = 0; i <= 5; ++i)
            ticks.push_back(lo_axis + (hi_axis - lo_axis) * i / 5.0);
    }
    auto y_pix = [&](double v) {
        double t = log_scale ? std::log10(std::max(floor_v, v)) : v;
        return kBottom - (kBottom - kTop) * (t - lo_axis) / (hi_axis - lo_axis);
    };

    std::vector<Series> series;
    for (const auto& g : groups) {
        Stats st = value_of(g);
        if (st.n == 0) continue;
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const Series& s) { return s.solver == g.solver; });
        if (it == series.end()) {
            series.push_back({g.solver, {}, {}, {}, {}});
            it = series.end() - 1;
        }
        double half = std::isnan(st.ci_half) ? 0.0 : st.ci_half;
        it->x.push_back(x_pix(g.axis_value));
        it->y.push_back(y_pix(st.mean));
        it->lo.push_back(y_pix(std::max(floor_v, st.mean - half)));
        it->hi.push_back(y_pix(st.mean + half));
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame and ticks
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
           num(kRight) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
           num(kLeft) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
    for (double tv : ticks) {
        double py = log_scale ? y_pix(tv) : y_pix(tv);
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
               num(kLeft) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
               "\" text-anchor=\"end\" font-size=\"12\">" + tick_label(tv) + "</text>\n";
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py) + "\" x2=\"" +
               num(kRight) + "\" y2=\"" + num(py) +
               "\" stroke=\"#dddddd\" stroke-dasharray=\"3,3\"/>\n";
    }
    for (int v : axis) {
        double px = x_pix(v);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
               num(px) + "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(kBottom + 20) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + std::to_string(v) +
               "</text>\n";
    }
    svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kHeight - 10) +
           "\" text-anchor=\"middle\" font-size=\"13\">sweep value</text>\n";
    svg += "<text x=\"16\" y=\"" + num((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
           num((kTop + kBottom) / 2) + ")\">" + std::string(y_label) + "</text>\n";

    // series: error bars, polyline, markers, legend
    double legend_y = kTop + 6;
    for (const auto& s : series) {
        const char* color = solver_color(s.solver);
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            svg += "<line x1=\"" + num(s.x[i]) + "\" y1=\"" + num(s.lo[i]) +
                   "\" x2=\"" + num(s.x[i]) + "\" y2=\"" + num(s.hi[i]) +
                   "\" stroke=\"" + color + "\"/>\n";
            for (double e : {s.lo[i], s.hi[i]})
                svg += "<line x1=\"" + num(s.x[i] - 4) + "\" y1=\"" + num(e) +
                       "\" x2=\"" + num(s.x[i] + 4) + "\" y2=\"" + num(e) +
                       "\" stroke=\"" + color + "\"/>\n";
        }
        if (s.x.size() > 1) {
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i) svg += ' ';
                svg += num(s.x[i]) + "," + num(s.y[i]);
            }
            svg += "\"/>\n";
        }
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg += "<circle cx=\"" + num(s.x[i]) + "\" cy=\"" + num(s.y[i]) +
                   "\" r=\"3\" fill=\"" + color + "\"/>\n";
        svg += "<rect x=\"" + num(kRight - 90) + "\" y=\"" + num(legend_y - 8) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        svg += "<text x=\"" + num(kRight - 75) + "\" y=\"" + num(legend_y + 1) +
               "\" font-size=\"12\">" + to_string(s.solver) + "</text>\n";
        legend_y += 16;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace dcpsp
