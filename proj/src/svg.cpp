#include "dualsolver/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dualsolver/report.hpp"

namespace dualsolver {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 150.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label, bool log_x,
                 bool log_y)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      log_x_(log_x),
      log_y_(log_y) {}

void SvgPlot::add_series(const std::string& name, const std::vector<double>& x,
                         const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("SvgPlot: x/y size mismatch");
    series_.push_back({name, x, y});
}

std::string SvgPlot::render() const {
    auto tx = [&](double v) { return log_x_ ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y_ ? std::log10(v) : v; };

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = tx(s.x[i]);
            const double yv = ty(s.y[i]);
            if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
            if (first) {
                xmin = xmax = xv;
                ymin = ymax = yv;
                first = false;
            } else {
                xmin = std::min(xmin, xv);
                xmax = std::max(xmax, xv);
                ymin = std::min(ymin, yv);
                ymax = std::max(ymax, yv);
            }
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double pad_y = 0.05 * (ymax - ymin);
    ymin -= pad_y;
    ymax += pad_y;

    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    auto px = [&](double v) { return kMarginL + (tx(v) - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double v) {
        return kMarginT + plot_h - (ty(v) - ymin) / (ymax - ymin) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title_ << "</text>\n";

    // frame + gridlines with tick labels
    svg << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 4.0;
        const double fy = ymin + (ymax - ymin) * k / 4.0;
        const double gx = kMarginL + plot_w * k / 4.0;
        const double gy = kMarginT + plot_h - plot_h * k / 4.0;
        svg << "<line x1=\"" << gx << "\" y1=\"" << kMarginT << "\" x2=\"" << gx << "\" y2=\""
            << kMarginT + plot_h << "\" stroke=\"#ddd\"/>\n";
        svg << "<line x1=\"" << kMarginL << "\" y1=\"" << gy << "\" x2=\""
            << kMarginL + plot_w << "\" y2=\"" << gy << "\" stroke=\"#ddd\"/>\n";
        const double label_x = log_x_ ? std::pow(10.0, fx) : fx;
        const double label_y = log_y_ ? std::pow(10.0, fy) : fy;
        svg << "<text x=\"" << gx << "\" y=\"" << kMarginT + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(label_x) << "</text>\n";
        svg << "<text x=\"" << kMarginL - 8 << "\" y=\"" << gy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(label_y) << "</text>\n";
    }
    svg << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << x_label_ << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kMarginT + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kMarginT + plot_h / 2 << ")\">" << y_label_
        << "</text>\n";

    for (std::size_t s = 0; s < series_.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream pts;
        for (std::size_t i = 0; i < series_[s].x.size(); ++i) {
            if (i) pts << ' ';
            pts << num(px(series_[s].x[i])) << ',' << num(py(series_[s].y[i]));
        }
        svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        for (std::size_t i = 0; i < series_[s].x.size(); ++i) {
            svg << "<circle cx=\"" << num(px(series_[s].x[i])) << "\" cy=\""
                << num(py(series_[s].y[i])) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        const double ly = kMarginT + 16.0 + 18.0 * static_cast<double>(s);
        svg << "<line x1=\"" << kWidth - kMarginR + 10 << "\" y1=\"" << ly << "\" x2=\""
            << kWidth - kMarginR + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kWidth - kMarginR + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series_[s].name
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void SvgPlot::save(const std::string& path) const { atomic_write_file(path, render()); }

}  // namespace dualsolver
