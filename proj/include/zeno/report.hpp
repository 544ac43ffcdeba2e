#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace zeno {

inline constexpr const char* kToolVersion = "0.1.0";

/// Numeric table with named columns; serialized as RFC-4180-style CSV with
/// 12 significant digits in scientific notation.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(const Table& table, std::ostream& out);

std::string format_number(double v);

/// Flat key=value configuration: `#` comments, later keys win.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::istream& in);
void write_config(const ConfigMap& config, std::ostream& out);

struct Series {
    std::string label;
    std::vector<double> x, y;
};

struct PlotStyle {
    std::string title, x_label, y_label;
    bool log_x = false, log_y = false;
    int width = 860, height = 540;
};

/// Self-contained SVG line plot. Throws std::invalid_argument when there is
/// no series or a series has fewer than two points.
void write_svg(std::span<const Series> series, const PlotStyle& style, std::ostream& out);

/// Sweep axis spec "lo:hi:lin|log:count" -> sample values.
std::vector<double> parse_axis(const std::string& spec);

}  // namespace zeno
