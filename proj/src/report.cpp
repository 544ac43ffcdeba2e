#include "zeno/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace zeno {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_number(row[i]);
        }
        out << '\n';
    }
}

ConfigMap parse_config(std::istream& in) {
    ConfigMap map;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key");
        map[key] = value;
    }
    return map;
}

void write_config(const ConfigMap& config, std::ostream& out) {
    for (const auto& [k, v] : config) out << k << " = " << v << '\n';
}

namespace {

double axis_transform(double v, bool log_scale) { return log_scale ? std::log10(v) : v; }

std::string svg_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            default: o += c;
        }
    }
    return o;
}

}  // namespace

void write_svg(std::span<const Series> series, const PlotStyle& style, std::ostream& out) {
    if (series.empty()) throw std::invalid_argument("write_svg: no data series");
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.size() < 2)
            throw std::invalid_argument("write_svg: series '" + s.label +
                                        "' needs at least two points");
    }
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (style.log_x && !(s.x[i] > 0.0)) continue;
            if (style.log_y && !(s.y[i] > 0.0)) continue;
            x_lo = std::min(x_lo, axis_transform(s.x[i], style.log_x));
            x_hi = std::max(x_hi, axis_transform(s.x[i], style.log_x));
            y_lo = std::min(y_lo, axis_transform(s.y[i], style.log_y));
            y_hi = std::max(y_hi, axis_transform(s.y[i], style.log_y));
        }
    }
    if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
    if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;

    const int W = style.width, H = style.height;
    const int ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;
    auto px = [&](double x) {
        return ml + pw * (axis_transform(x, style.log_x) - x_lo) / (x_hi - x_lo);
    };
    auto py = [&](double y) {
        return mt + ph * (1.0 - (axis_transform(y, style.log_y) - y_lo) / (y_hi - y_lo));
    };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    if (!style.title.empty())
        out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">" << svg_escape(style.title)
            << "</text>\n";

    char buf[64];
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / 5.0;
        const double vx = style.log_x ? std::pow(10.0, fx) : fx;
        const double sx = ml + pw * i / 5.0;
        out << "<line x1=\"" << sx << "\" y1=\"" << mt + ph << "\" x2=\"" << sx
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#333\"/>\n";
        std::snprintf(buf, sizeof(buf), "%.3g", vx);
        out << "<text x=\"" << sx << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << buf << "</text>\n";
        const double fy = y_lo + (y_hi - y_lo) * i / 5.0;
        const double vy = style.log_y ? std::pow(10.0, fy) : fy;
        const double sy = mt + ph * (1.0 - i / 5.0);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy << "\" x2=\"" << ml
            << "\" y2=\"" << sy << "\" stroke=\"#333\"/>\n";
        std::snprintf(buf, sizeof(buf), "%.3g", vy);
        out << "<text x=\"" << ml - 8 << "\" y=\"" << sy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
            << "</text>\n";
    }
    if (!style.x_label.empty())
        out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << svg_escape(style.x_label) << "</text>\n";
    if (!style.y_label.empty())
        out << "<text x=\"16\" y=\"" << mt + ph / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
            << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">"
            << svg_escape(style.y_label) << "</text>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        out << "<polyline fill=\"none\" stroke=\"" << kColors[s % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < ser.x.size(); ++i) {
            if (style.log_x && !(ser.x[i] > 0.0)) continue;
            if (style.log_y && !(ser.y[i] > 0.0)) continue;
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(ser.x[i]), py(ser.y[i]));
            out << buf;
        }
        out << "\"/>\n";
        const double ly = mt + 16 + 16.0 * s;
        out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\""
            << ml + pw - 120 << "\" y2=\"" << ly << "\" stroke=\"" << kColors[s % 6]
            << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << ml + pw - 114 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << svg_escape(ser.label)
            << "</text>\n";
    }
    out << "</svg>\n";
}

std::vector<double> parse_axis(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
        throw std::invalid_argument("axis spec must be lo:hi:lin|log:count, got " + spec);
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const std::string& mode = parts[2];
    const int n = std::stoi(parts[3]);
    if (n < 2) throw std::invalid_argument("axis spec: point count must be >= 2");
    if (mode != "lin" && mode != "log")
        throw std::invalid_argument("axis spec: spacing must be lin or log");
    if (mode == "log" && !(lo > 0.0 && hi > 0.0))
        throw std::invalid_argument("axis spec: log spacing needs positive bounds");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        out[i] = mode == "log" ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return out;
}

}  // namespace zeno
