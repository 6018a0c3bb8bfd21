#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fracent::tools {

enum class PlotKind { CdfFit, Profile, Regression };

std::string_view plot_kind_name(PlotKind k);
PlotKind parse_plot_kind(std::string_view name);

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool line = false;  // polyline when true, markers otherwise
};

struct Plot {
    PlotKind kind = PlotKind::Profile;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Self-contained SVG document. Identical input gives identical bytes; an empty
/// plot still has axes, ticks and labels. Regression plots add the y = x line.
std::string render_svg(const Plot& plot);

/// Writes render_svg(plot); throws std::runtime_error when the file cannot be written.
void write_svg(const Plot& plot, const std::string& path);

}  // namespace fracent::tools
