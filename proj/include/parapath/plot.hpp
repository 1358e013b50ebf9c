// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "parapath/oracle.hpp"
#include "parapath/pgpp.hpp"

namespace parapath {
namespace plot {

/// Exact samples of every path-cost curve plus the optimal-cost envelope
/// over an x grid. The CSV keeps the rationals verbatim; the SVG renders
/// decimal approximations.
struct PlotData {
    std::vector<Rational> xs;
    std::vector<std::string> labels;                // one per curve
    std::vector<std::vector<Rational>> curves;      // labels.size() rows
    std::vector<Rational> envelope;
};

inline std::vector<Rational> sample_grid(const Rational& lo, const Rational& hi, int samples) {
    if (samples < 1) fail(ErrorCode::InvalidArgument, "samples must be >= 1");
    if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "x-range must be increasing");
    std::vector<Rational> xs;
    xs.reserve(samples);
    if (samples == 1) {
        xs.push_back(lo);
        return xs;
    }
    Rational step = (hi - lo) / (samples - 1);
    for (int i = 0; i < samples; ++i) xs.push_back(lo + step * i);
    return xs;
}

inline PlotData sample_instance(const GppInstance& inst, const Rational& lo, const Rational& hi,
                                int samples, std::uint64_t cap = oracle::kDefaultPathCap) {
    PlotData data;
    data.xs = sample_grid(lo, hi, samples);
    oracle::PathEnumeration en = oracle::enumerate_paths(inst.dag, cap);
    if (en.paths.empty()) fail(ErrorCode::UnreachableTarget, "no s-t path to plot");
    for (std::size_t i = 0; i < en.paths.size(); ++i) {
        PLFunction fn = oracle::path_cost_function(inst, en.paths[i]);
        std::vector<Rational> row;
        row.reserve(data.xs.size());
        for (const auto& x : data.xs) row.push_back(fn.eval(x));
        data.labels.push_back("path_" + std::to_string(i));
        data.curves.push_back(std::move(row));
    }
    Annotated<Path> env = oracle::oracle_envelope(inst, cap);
    data.envelope.reserve(data.xs.size());
    for (const auto& x : data.xs) data.envelope.push_back(env.fn.eval(x));
    return data;
}

inline PlotData sample_table(const pgpp::PgppTable& table, const Rational& lo, const Rational& hi,
                             int samples) {
    PlotData data;
    data.xs = sample_grid(lo, hi, samples);
    data.envelope.reserve(data.xs.size());
    for (const auto& x : data.xs) {
        pgpp::QueryResult q = pgpp::query(table, x);
        // sign * cost undoes the objective sign: the plot shows the raw
        // envelope of path-cost lines, like the instance mode.
        data.envelope.push_back(Rational(table.objective_sign) * q.cost);
    }
    return data;
}

inline std::string to_csv(const PlotData& data) {
    std::string out = "x";
    for (const auto& label : data.labels) out += "," + label;
    out += ",envelope\n";
    for (std::size_t i = 0; i < data.xs.size(); ++i) {
        out += to_string(data.xs[i]);
        for (const auto& curve : data.curves) out += "," + to_string(curve[i]);
        out += "," + to_string(data.envelope[i]) + "\n";
    }
    return out;
}

namespace detail {

inline std::string dec(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace detail

/// SVG 1.1 rendering: every path curve in a thin stroke, the envelope
/// highlighted on top.
inline std::string to_svg(const PlotData& data) {
    const double width = 800, height = 500;
    const double ml = 60, mr = 20, mt = 20, mb = 40;
    double xmin = data.xs.front().convert_to<double>();
    double xmax = data.xs.back().convert_to<double>();
    double ymin = data.envelope.front().convert_to<double>();
    double ymax = ymin;
    auto widen = [&](const std::vector<Rational>& row) {
        for (const auto& v : row) {
            double d = v.convert_to<double>();
            ymin = std::min(ymin, d);
            ymax = std::max(ymax, d);
        }
    };
    for (const auto& curve : data.curves) widen(curve);
    widen(data.envelope);
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    auto polyline = [&](const std::vector<Rational>& row, const std::string& style) {
        std::string s = "  <polyline fill=\"none\" " + style + " points=\"";
        for (std::size_t i = 0; i < data.xs.size(); ++i) {
            if (i) s += " ";
            s += detail::dec(px(data.xs[i].convert_to<double>())) + "," +
                 detail::dec(py(row[i].convert_to<double>()));
        }
        return s + "\"/>\n";
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                      detail::dec(width) + " " + detail::dec(height) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes (the x axis sits at y=0 when visible, else at the bottom).
    double axis_y = (ymin <= 0 && 0 <= ymax) ? py(0) : height - mb;
    svg += "  <line stroke=\"#888\" x1=\"" + detail::dec(ml) + "\" y1=\"" + detail::dec(axis_y) +
           "\" x2=\"" + detail::dec(width - mr) + "\" y2=\"" + detail::dec(axis_y) + "\"/>\n";
    svg += "  <line stroke=\"#888\" x1=\"" + detail::dec(ml) + "\" y1=\"" + detail::dec(mt) +
           "\" x2=\"" + detail::dec(ml) + "\" y2=\"" + detail::dec(height - mb) + "\"/>\n";
    for (const auto& curve : data.curves)
        svg += polyline(curve, "stroke=\"#2a9d8f\" stroke-width=\"1\" opacity=\"0.6\"");
    svg += polyline(data.envelope, "stroke=\"#d81b60\" stroke-width=\"3\"");
    svg += "</svg>\n";
    return svg;
}

}  // namespace plot
}  // namespace parapath
