// Copyright 2026 The Symment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "symment/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "symment/errors.h"

namespace symment {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 600;
constexpr double kLeft = 80;
constexpr double kRight = 160;
constexpr double kTop = 50;
constexpr double kBottom = 60;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string &text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0;
    double hi = 1;

    double map(double v) const {
        double t = log ? std::log10(v) : v;
        return (t - lo) / (hi - lo);
    }
    double unmap(double t) const {
        double v = lo + t * (hi - lo);
        return log ? std::pow(10.0, v) : v;
    }
};

bool placeable(double v, bool log) {
    return std::isfinite(v) && (!log || v > 0);
}

Axis fit_axis(const std::vector<double> &values, bool log) {
    Axis axis{log, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double v : values) {
        double t = log ? std::log10(v) : v;
        axis.lo = std::min(axis.lo, t);
        axis.hi = std::max(axis.hi, t);
    }
    if (values.empty()) {
        axis.lo = 0;
        axis.hi = 1;
    }
    if (axis.hi - axis.lo < 1e-12) {
        axis.lo -= 0.5;
        axis.hi += 0.5;
    }
    return axis;
}

}  // namespace

std::string render_svg(const std::vector<Series> &series, const ChartOptions &options) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &s : series) {
        for (auto [x, y] : s.points) {
            if (placeable(x, options.log_x) && placeable(y, options.log_y)) {
                xs.push_back(x);
                ys.push_back(y);
            }
        }
    }
    Axis ax = fit_axis(xs, options.log_x);
    Axis ay = fit_axis(ys, options.log_y);
    double pw = kWidth - kLeft - kRight;
    double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + ax.map(x) * pw; };
    auto py = [&](double y) { return kTop + (1 - ay.map(y)) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << escape(options.title) << "</text>\n";
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; i++) {
        double t = i / 5.0;
        double gx = kLeft + t * pw;
        double gy = kTop + (1 - t) * ph;
        out << "<line x1=\"" << num(gx) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(gx) << "\" y2=\""
            << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(gx) << "\" y=\"" << num(kTop + ph + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label(ax.unmap(t))
            << "</text>\n";
        out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(gy) << "\" x2=\"" << num(kLeft) << "\" y2=\""
            << num(gy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(gy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label(ay.unmap(t))
            << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(options.x_label)
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\" transform=\"rotate(-90 18 " << num(kTop + ph / 2) << ")\">" << escape(options.y_label)
        << "</text>\n";

    for (size_t i = 0; i < series.size(); i++) {
        const char *color = kPalette[i % std::size(kPalette)];
        std::string path;
        std::string marks;
        for (auto [x, y] : series[i].points) {
            if (!placeable(x, options.log_x) || !placeable(y, options.log_y)) {
                continue;
            }
            path += (path.empty() ? "" : " ") + num(px(x)) + "," + num(py(y));
            marks += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
        if (!path.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << path
                << "\"/>\n";
        }
        out << marks;
        double ly = kTop + 15 + 20.0 * static_cast<double>(i);
        out << "<line x1=\"" << num(kWidth - kRight + 15) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(kWidth - kRight + 35) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(kWidth - kRight + 40) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[i].name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void emit_svg(const std::vector<Series> &series, const ChartOptions &options, const std::string &path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InputError("cannot write " + path);
    }
    file << render_svg(series, options);
}

}  // namespace symment
