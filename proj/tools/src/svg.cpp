#include "qthresh/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace qthresh::cli {

namespace {

// Plot geometry (pixels). The legend lives in the right margin.
constexpr double kWidth = 800;
constexpr double kHeight = 560;
constexpr double kLeft = 80;
constexpr double kRight = 640;
constexpr double kTop = 50;
constexpr double kBottom = 490;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1e", value);
    return buf;
}

// Largest step from {1, 2, 5} * 10^n that yields at most 9 ticks.
double nice_step(double span) {
    double step = std::pow(10.0, std::floor(std::log10(span / 9.0)));
    for (double factor : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * factor) <= 9.0) return step * factor;
    }
    return step * 10.0;
}

}  // namespace

void write_scan_svg(std::ostream& out, const std::string& code_name,
                    const std::vector<model::ThresholdCurve>& curves) {
    double r_lo = 0, r_hi = 0, log_lo = 0, log_hi = 0;
    bool first = true;
    for (const model::ThresholdCurve& curve : curves) {
        for (const model::ThresholdPoint& point : curve.points) {
            const double lp = std::log10(point.p_th);
            if (first) {
                r_lo = r_hi = point.query.r;
                log_lo = log_hi = lp;
                first = false;
            } else {
                r_lo = std::min(r_lo, point.query.r);
                r_hi = std::max(r_hi, point.query.r);
                log_lo = std::min(log_lo, lp);
                log_hi = std::max(log_hi, lp);
            }
        }
    }
    if (first) return;  // callers validate non-emptiness; nothing to draw
    if (r_hi - r_lo < 1e-12) {
        r_lo -= 0.5;
        r_hi += 0.5;
    }
    if (log_hi - log_lo < 1e-9) {
        log_lo -= 0.5;
        log_hi += 0.5;
    }
    const double pad = 0.04 * (log_hi - log_lo);
    log_lo -= pad;
    log_hi += pad;

    const auto x_of = [&](double r) {
        return kLeft + (r - r_lo) / (r_hi - r_lo) * (kRight - kLeft);
    };
    const auto y_of = [&](double log_pth) {
        return kBottom - (log_pth - log_lo) / (log_hi - log_lo) * (kBottom - kTop);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << px((kLeft + kRight) / 2) << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << code_name << ": threshold vs error-correction period</text>\n";

    // Axes.
    out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(kRight)
        << "\" y2=\"" << px(kBottom) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft)
        << "\" y2=\"" << px(kBottom) << "\" stroke=\"black\"/>\n";

    // Horizontal ticks on a nice linear grid in r.
    const double step = nice_step(r_hi - r_lo);
    for (double r = std::ceil(r_lo / step) * step; r <= r_hi + 1e-9 * step; r += step) {
        const double x = x_of(r);
        out << "<line x1=\"" << px(x) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(x)
            << "\" y2=\"" << px(kBottom + 6) << "\" stroke=\"black\"/>\n";
        char label[32];
        std::snprintf(label, sizeof(label), "%g", r);
        out << "<text x=\"" << px(x) << "\" y=\"" << px(kBottom + 22)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << label
            << "</text>\n";
    }

    // Vertical ticks: evenly spaced in log10(p_th).
    constexpr int kYTicks = 6;
    for (int i = 0; i < kYTicks; ++i) {
        const double lp = log_lo + (log_hi - log_lo) * i / (kYTicks - 1);
        const double y = y_of(lp);
        out << "<line x1=\"" << px(kLeft - 6) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft)
            << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(kLeft - 10) << "\" y=\"" << px(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(std::pow(10.0, lp)) << "</text>\n";
    }

    // Axis labels.
    out << "<text x=\"" << px((kLeft + kRight) / 2) << "\" y=\"" << px(kHeight - 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
           "error-correction period r</text>\n";
    out << "<text x=\"22\" y=\"" << px((kTop + kBottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 22 "
        << px((kTop + kBottom) / 2) << ")\">threshold p_th (log scale)</text>\n";

    // Curves with point markers (markers keep single-point scans visible).
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const model::ThresholdPoint& point : curves[i].points) {
            out << px(x_of(point.query.r)) << ',' << px(y_of(std::log10(point.p_th))) << ' ';
        }
        out << "\"/>\n";
        for (const model::ThresholdPoint& point : curves[i].points) {
            out << "<circle cx=\"" << px(x_of(point.query.r)) << "\" cy=\""
                << px(y_of(std::log10(point.p_th))) << "\" r=\"2.5\" fill=\"" << color
                << "\"/>\n";
        }
    }

    // Legend.
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        const double y = kTop + 18 + 22 * static_cast<double>(i);
        out << "<line x1=\"" << px(kRight + 18) << "\" y1=\"" << px(y) << "\" x2=\""
            << px(kRight + 46) << "\" y2=\"" << px(y) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << px(kRight + 52) << "\" y=\"" << px(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">k = " << curves[i].k
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace qthresh::cli
