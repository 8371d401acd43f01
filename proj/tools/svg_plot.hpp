#pragma once

// Minimal scalable-vector plot writer for the batch CLI: axes, polylines,
// scatter points, labels. No display server, no interactivity.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace re100::plot {

using Point = std::pair<double, double>;

struct Series {
    std::vector<Point> points;
    std::string color = "#1f6fb4";
    std::string label;
    bool scatter = false;
    double stroke_width = 1.6;
    double radius = 1.2;
};

class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_line(std::vector<Point> points, std::string color, std::string label = "") {
        Series s;
        s.points = std::move(points);
        s.color = std::move(color);
        s.label = std::move(label);
        series_.push_back(std::move(s));
    }

    void add_points(std::vector<Point> points, std::string color, std::string label = "",
                    double radius = 1.2) {
        Series s;
        s.points = std::move(points);
        s.color = std::move(color);
        s.label = std::move(label);
        s.scatter = true;
        s.radius = radius;
        series_.push_back(std::move(s));
    }

    void add_markers(std::vector<Point> points, std::string color) {
        Series s;
        s.points = std::move(points);
        s.color = std::move(color);
        s.scatter = true;
        s.radius = 3.2;
        series_.push_back(std::move(s));
    }

    void write(const std::string& path) const {
        double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
        double y_lo = x_lo, y_hi = -x_lo;
        for (const auto& s : series_) {
            for (const auto& [x, y] : s.points) {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
        if (!(x_hi > x_lo)) { x_lo -= 0.5; x_hi += 0.5; }
        if (!(y_hi > y_lo)) { y_lo -= 0.5; y_hi += 0.5; }
        double x_pad = 0.04 * (x_hi - x_lo), y_pad = 0.06 * (y_hi - y_lo);
        x_lo -= x_pad; x_hi += x_pad;
        y_lo = std::min(0.0, y_lo - y_pad); y_hi += y_pad;

        const double w = 640, h = 440, ml = 70, mr = 20, mt = 36, mb = 52;
        auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (w - ml - mr); };
        auto sy = [&](double y) { return h - mb - (y - y_lo) / (y_hi - y_lo) * (h - mt - mb); };

        std::ofstream out(path);
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
            << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

        // axes + ticks
        out << "<g stroke=\"#333\" stroke-width=\"1\">";
        out << line(ml, h - mb, w - mr, h - mb) << line(ml, mt, ml, h - mb);
        out << "</g>\n";
        out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
        for (double t : ticks(x_lo, x_hi)) {
            double px = sx(t);
            out << "<line x1=\"" << px << "\" y1=\"" << h - mb << "\" x2=\"" << px << "\" y2=\""
                << h - mb + 4 << "\" stroke=\"#333\"/>";
            out << "<text x=\"" << px << "\" y=\"" << h - mb + 16
                << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
        }
        for (double t : ticks(y_lo, y_hi)) {
            double py = sy(t);
            out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\""
                << py << "\" stroke=\"#333\"/>";
            out << "<text x=\"" << ml - 7 << "\" y=\"" << py + 4
                << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
        }
        out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
            << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label_)
            << "</text>\n";
        out << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
            << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
            << (mt + h - mb) / 2 << ")\">" << escape(y_label_) << "</text>\n";
        out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
            << escape(title_) << "</text>\n";
        out << "</g>\n";

        // data, clipped to the frame
        out << "<clipPath id=\"frame\"><rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
            << w - ml - mr << "\" height=\"" << h - mt - mb << "\"/></clipPath>\n";
        out << "<g clip-path=\"url(#frame)\">\n";
        for (const auto& s : series_) {
            if (s.scatter) {
                out << "<g fill=\"" << s.color << "\">";
                for (const auto& [x, y] : s.points)
                    out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\""
                        << s.radius << "\"/>";
                out << "</g>\n";
            } else if (s.points.size() >= 2) {
                out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
                    << s.stroke_width << "\" points=\"";
                for (const auto& [x, y] : s.points) out << sx(x) << "," << sy(y) << " ";
                out << "\"/>\n";
            }
        }
        out << "</g>\n";

        // legend
        double ly = mt + 10;
        out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
        for (const auto& s : series_) {
            if (s.label.empty()) continue;
            out << "<rect x=\"" << w - mr - 150 << "\" y=\"" << ly - 8
                << "\" width=\"14\" height=\"4\" fill=\"" << s.color << "\"/>";
            out << "<text x=\"" << w - mr - 132 << "\" y=\"" << ly - 2 << "\">"
                << escape(s.label) << "</text>\n";
            ly += 16;
        }
        out << "</g>\n</svg>\n";
    }

private:
    static std::string line(double x1, double y1, double x2, double y2) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\"/>", x1, y1, x2, y2);
        return buf;
    }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '&') out += "&amp;";
            else if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else out += c;
        }
        return out;
    }

    // 1-2-5 tick spacing, at most ~6 labels.
    static std::vector<double> ticks(double lo, double hi) {
        double span = hi - lo;
        double raw = span / 5.0;
        double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (raw <= m * mag) {
                step = m * mag;
                break;
            }
        }
        std::vector<double> out;
        double first = std::ceil(lo / step) * step;
        for (double t = first; t <= hi + 1e-12 * span; t += step) out.push_back(t);
        return out;
    }

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace re100::plot
