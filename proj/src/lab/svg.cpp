#include "lab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"

namespace lab {

using nlohmann::json;
using zetalab::MalformedResult;

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 550.0;

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string f6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Frame {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;

    static Frame fit(const std::vector<double>& xs, const std::vector<double>& ys) {
        Frame f;
        if (!xs.empty()) {
            f.xmin = f.xmax = xs[0];
            f.ymin = f.ymax = ys[0];
            for (std::size_t i = 1; i < xs.size(); ++i) {
                f.xmin = std::min(f.xmin, xs[i]);
                f.xmax = std::max(f.xmax, xs[i]);
                f.ymin = std::min(f.ymin, ys[i]);
                f.ymax = std::max(f.ymax, ys[i]);
            }
        }
        auto pad = [](double& lo, double& hi) {
            double span = hi - lo;
            if (!(span > 0.0)) span = (std::abs(lo) > 0.0 ? std::abs(lo) : 1.0);
            lo -= 0.05 * span;
            hi += 0.05 * span;
        };
        pad(f.xmin, f.xmax);
        pad(f.ymin, f.ymax);
        return f;
    }

    double sx(double x) const { return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft); }
    double sy(double y) const { return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop); }
};

std::string header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + f2(kWidth) +
           "\" height=\"" + f2(kHeight) + "\" viewBox=\"0 0 " + f2(kWidth) + " " + f2(kHeight) +
           "\">\n<rect width=\"" + f2(kWidth) + "\" height=\"" + f2(kHeight) +
           "\" fill=\"white\"/>\n";
}

std::string axes(const Frame& f, const std::string& title, const std::string& x_label,
                 const std::string& y_label) {
    std::string out;
    out += "<line x1=\"" + f2(kLeft) + "\" y1=\"" + f2(kBottom) + "\" x2=\"" + f2(kRight) +
           "\" y2=\"" + f2(kBottom) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + f2(kLeft) + "\" y1=\"" + f2(kTop) + "\" x2=\"" + f2(kLeft) +
           "\" y2=\"" + f2(kBottom) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + f2(kLeft) + "\" y=\"" + f2(kTop - 15.0) +
           "\" font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
    out += "<text x=\"" + f2(kLeft) + "\" y=\"" + f2(kBottom + 20.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + f6(f.xmin) + "</text>\n";
    out += "<text x=\"" + f2(kRight - 60.0) + "\" y=\"" + f2(kBottom + 20.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + f6(f.xmax) + "</text>\n";
    out += "<text x=\"" + f2(kLeft - 65.0) + "\" y=\"" + f2(kBottom) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + f6(f.ymin) + "</text>\n";
    out += "<text x=\"" + f2(kLeft - 65.0) + "\" y=\"" + f2(kTop + 10.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + f6(f.ymax) + "</text>\n";
    out += "<text x=\"" + f2((kLeft + kRight) / 2.0) + "\" y=\"" + f2(kBottom + 35.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + x_label + "</text>\n";
    out += "<text x=\"" + f2(10.0) + "\" y=\"" + f2((kTop + kBottom) / 2.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 10 " +
           f2((kTop + kBottom) / 2.0) + ")\">" + y_label + "</text>\n";
    return out;
}

std::string polyline(const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& color) {
    if (xs.empty()) return "";
    std::string out = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += f2(f.sx(xs[i])) + "," + f2(f.sy(ys[i]));
    }
    out += "\"/>\n";
    return out;
}

std::string dots(const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::string& color) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += "<circle cx=\"" + f2(f.sx(xs[i])) + "\" cy=\"" + f2(f.sy(ys[i])) +
               "\" r=\"2.50\" fill=\"" + color + "\"/>\n";
    }
    return out;
}

std::string note(double x, double y, const std::string& text, const std::string& color) {
    return "<text x=\"" + f2(x) + "\" y=\"" + f2(y) +
           "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" + color + "\">" + text +
           "</text>\n";
}

std::string curve_plot(const json& rows, const char* x_key, const char* y_key,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label, bool empty_hits) {
    std::vector<double> xs, ys;
    for (const json& row : rows) {
        xs.push_back(row.at(x_key).get<double>());
        ys.push_back(row.at(y_key).get<double>());
    }
    const Frame f = Frame::fit(xs, ys);
    std::string out = header() + axes(f, title, x_label, y_label);
    out += polyline(f, xs, ys, "#1f77b4");
    if (empty_hits)
        out += note((kLeft + kRight) / 2.0 - 60.0, (kTop + kBottom) / 2.0,
                    "no accepted points in this scan", "#d62728");
    out += "</svg>\n";
    return out;
}

}  // namespace

std::string svg_for_result(const json& result) {
    try {
        if (!result.is_object() || !result.contains("kind") || !result.contains("result"))
            throw MalformedResult("svg_for_result: not a result document (missing kind/result)");
        const std::string kind = result.at("kind").get<std::string>();
        const json& r = result.at("result");

        if (kind == "kronecker") {
            return curve_plot(r.at("density_vs_T"), "T", "density", "kronecker scan", "T",
                              "running density", r.at("hit_count").get<std::int64_t>() == 0);
        }
        if (kind == "density") {
            return curve_plot(r.at("fraction_vs_T"), "T", "fraction", "shift-difference density",
                              "T", "accepted fraction",
                              r.at("accepted_count").get<std::int64_t>() == 0);
        }
        if (kind == "bound-sweep") {
            std::vector<double> xs, ys;
            for (const json& row : r.at("scatter")) {
                const double prod = row.at("abs_product").get<double>();
                const double bound = row.at("bound").get<double>();
                if (!(prod > 0.0)) continue;
                xs.push_back(row.at("sigma").get<double>());
                ys.push_back(std::log(bound / prod));
            }
            const Frame f = Frame::fit(xs, ys);
            std::string out = header() + axes(f, "bound sweep", "sigma", "log(bound / |product|)");
            out += dots(f, xs, ys, "#1f77b4");
            out += note(kRight - 250.0, kTop + 10.0, "margin is positive when the bound holds",
                        "#444444");
            out += "</svg>\n";
            return out;
        }
        if (kind == "pipeline") {
            std::vector<double> xs_hit, ys_hit, xs_rand, ys_rand;
            for (const json& row : r.at("samples")) {
                if (row.at("skipped").get<bool>()) continue;
                const double tau = row.at("tau").get<double>();
                const double err = row.at("err_a").get<double>();
                if (row.at("from_hit").get<bool>()) {
                    xs_hit.push_back(tau);
                    ys_hit.push_back(err);
                } else {
                    xs_rand.push_back(tau);
                    ys_rand.push_back(err);
                }
            }
            std::vector<double> all_x = xs_hit, all_y = ys_hit;
            all_x.insert(all_x.end(), xs_rand.begin(), xs_rand.end());
            all_y.insert(all_y.end(), ys_rand.begin(), ys_rand.end());
            const Frame f = Frame::fit(all_x, all_y);
            std::string out =
                header() + axes(f, "product approximation", "tau", "log-zeta error (a-leg)");
            out += dots(f, xs_hit, ys_hit, "#1f77b4");
            out += dots(f, xs_rand, ys_rand, "#d62728");
            out += note(kRight - 220.0, kTop + 10.0, "blue: aligned tau", "#1f77b4");
            out += note(kRight - 220.0, kTop + 28.0, "red: random tau", "#d62728");
            out += "</svg>\n";
            return out;
        }
        if (kind == "remark-demo") {
            std::vector<double> xs, y_abs, y_ratio, y_diff;
            for (const json& row : r.at("rows")) {
                xs.push_back(row.at("tau").get<double>());
                y_abs.push_back(row.at("sup_abs_zeta").get<double>());
                y_ratio.push_back(row.at("sup_ratio_minus_one").get<double>());
                y_diff.push_back(row.at("sup_difference").get<double>());
            }
            std::vector<double> all_x, all_y;
            for (int rep = 0; rep < 3; ++rep)
                all_x.insert(all_x.end(), xs.begin(), xs.end());
            all_y.insert(all_y.end(), y_abs.begin(), y_abs.end());
            all_y.insert(all_y.end(), y_ratio.begin(), y_ratio.end());
            all_y.insert(all_y.end(), y_diff.begin(), y_diff.end());
            const Frame f = Frame::fit(all_x, all_y);
            std::string out = header() + axes(f, "ratio vs difference", "tau", "grid sup");
            out += polyline(f, xs, y_abs, "#2ca02c");
            out += polyline(f, xs, y_ratio, "#1f77b4");
            out += polyline(f, xs, y_diff, "#d62728");
            out += note(kRight - 220.0, kTop + 10.0, "green: sup |zeta|", "#2ca02c");
            out += note(kRight - 220.0, kTop + 28.0, "blue: sup |ratio - 1|", "#1f77b4");
            out += note(kRight - 220.0, kTop + 46.0, "red: sup |difference|", "#d62728");
            out += "</svg>\n";
            return out;
        }
        throw MalformedResult("svg_for_result: kind \"" + kind + "\" has no plottable series");
    } catch (const json::exception& e) {
        throw MalformedResult(std::string("svg_for_result: mangled result document: ") + e.what());
    }
}

}  // namespace lab
