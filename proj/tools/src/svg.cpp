#include "fracent_tools/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fracent::tools {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.03 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

}  // namespace

std::string_view plot_kind_name(PlotKind k) {
    switch (k) {
        case PlotKind::CdfFit: return "cdf-fit";
        case PlotKind::Profile: return "profile";
        case PlotKind::Regression: return "regression";
    }
    return "profile";
}

PlotKind parse_plot_kind(std::string_view name) {
    for (PlotKind k : {PlotKind::CdfFit, PlotKind::Profile, PlotKind::Regression})
        if (plot_kind_name(k) == name) return k;
    throw std::invalid_argument("unknown plot kind '" + std::string(name) + "'");
}

std::string render_svg(const Plot& plot) {
    Range xr, yr;
    for (const auto& s : plot.series)
        for (const auto& [x, y] : s.points) {
            xr.add(x);
            yr.add(y);
        }
    if (plot.kind == PlotKind::Regression) {
        // Square axes so the identity line is the diagonal.
        xr.add(yr.lo);
        xr.add(yr.hi);
        yr = xr;
    }
    xr.finish();
    yr.finish();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight) << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";

    o << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\"/>\n";
    for (int i = 0; i <= kTicks; ++i) {
        const double tx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double ty = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        o << "<line x1=\"" << num(sx(tx)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(sx(tx)) << "\" y2=\""
          << num(kTop + ph + 5) << "\"/>\n";
        o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(ty)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
          << num(sy(ty)) << "\"/>\n";
    }
    o << "</g>\n<g fill=\"black\">\n";
    for (int i = 0; i <= kTicks; ++i) {
        const double tx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double ty = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        o << "<text x=\"" << num(sx(tx)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
          << tick_label(tx) << "</text>\n";
        o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(ty) + 4) << "\" text-anchor=\"end\">"
          << tick_label(ty) << "</text>\n";
    }
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << "</text>\n";
    o << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n</g>\n";

    if (plot.kind == PlotKind::Regression) {
        const double lo = std::max(xr.lo, yr.lo), hi = std::min(xr.hi, yr.hi);
        o << "<line class=\"identity\" x1=\"" << num(sx(lo)) << "\" y1=\"" << num(sy(lo)) << "\" x2=\"" << num(sx(hi))
          << "\" y2=\"" << num(sy(hi)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto& s = plot.series[i];
        const char* color = kPalette[i % kPalette.size()];
        if (s.line) {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                o << (first ? "" : " ") << num(sx(x)) << ',' << num(sy(y));
                first = false;
            }
            o << "\"/>\n";
        } else {
            o << "<g fill=\"" << color << "\">\n";
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                o << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"3\"/>\n";
            }
            o << "</g>\n";
        }
        const double ly = kTop + 10 + 18.0 * static_cast<double>(i);
        const double lx = kLeft + pw + 12;
        if (s.line)
            o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20) << "\" y2=\"" << num(ly)
              << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        else
            o << "<circle cx=\"" << num(lx + 10) << "\" cy=\"" << num(ly) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        o << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_svg(const Plot& plot, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << render_svg(plot);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace fracent::tools
